#!/usr/bin/env python3
"""Smoke test for the ddgraph_py extension module.

Build the module first, then run this script from the repository root:

    cargo build --release -p ddgraph-py
    cp target/release/libddgraph_py.so target/release/ddgraph_py.so
    PYTHONPATH=target/release python3 python/smoke_test.py
"""

import sys

import ddgraph_py as dd


def check(name, got, want):
    if got != want:
        print(f"FAIL {name}: got {got!r}, want {want!r}")
        sys.exit(1)
    print(f"ok   {name}: {got!r}")


def main():
    check("moore_bound(3, 2)", dd.moore_bound(3, 2), 10)
    check("moore_bound(7, 2)", dd.moore_bound(7, 2), 50)

    g = dd.Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    check("K4 order", g.order(), 4)
    check("K4 edges", g.edge_count(), 6)
    check("K4 diameter", g.diameter(), 1)
    check("K4 girth", g.girth(), 3)

    foster = dd.foster_graph()
    check("Foster order", foster.order(), 144)
    check("Foster regular", foster.is_regular(), True)
    check("Foster bipartite", foster.is_bipartite(), True)
    check("Foster girth", foster.girth(), 8)
    check("Foster diameter", foster.diameter(), 7)

    order, degree, diameter = dd.semidirect_diameter(
        24, 90, 511, [(13, 77), (6, 157), (15, 50), (12, 7)]
    )
    check("(7,6) record", (order, degree, diameter), (12264, 7, 6))

    table = dd.record_table()
    check("table size", len(table), 126)
    check("table (3,2)", table[0][:3], (3, 2, 10))

    lines = dd.verify_cayley_records()
    check("cayley report rows", len(lines), 13)
    verified = sum(1 for l in lines if " verified " in l)
    inconsistent = sum(1 for l in lines if " inconsistent-spec " in l)
    check("verified rows", verified, 12)
    check("inconsistent rows", inconsistent, 1)

    # Chen construction through the bindings: K4 plus its three
    # opposite-edge pairs gives the Petersen graph.
    petersen = dd.edge_pairing_graph(g, [(0, 5), (1, 4), (2, 3)])
    check("pairing order", petersen.order(), 10)
    check("pairing girth", petersen.girth(), 5)
    check("pairing diameter", petersen.diameter(), 2)
    check("pairing average distance", petersen.average_distance(), "1.666667")

    print("smoke test passed")


if __name__ == "__main__":
    main()
