//! Finite-group arithmetic backends.
//!
//! Three group families back the Cayley constructions: cyclic semidirect
//! products Z_M x|_A Z_N, the two-coordinate product (Z_m x Z_m) x| Z_2 with
//! coordinate-swap action, and generic multiplication-table groups loaded
//! from a file. Elements are addressed by a dense index in [0, order).

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("moduli must be positive and the multiplier must satisfy 1 <= A < N (got M={m}, A={a}, N={n})")]
    BadParameters { m: u64, a: u64, n: u64 },
    #[error("action not invertible: gcd({a}, {n}) != 1")]
    ActionNotInvertible { a: u64, n: u64 },
    #[error("action order does not divide M: {a}^{m} = {power} (mod {n}), expected 1")]
    ActionOrderMismatch { a: u64, m: u64, n: u64, power: u64 },
    #[error("group table, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("closure failed: table entry {value} out of range for order {order}")]
    NotClosed { value: u64, order: usize },
    #[error("no two-sided identity element found")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at witness ({a}, {b}, {c}): ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table of order {order} exceeds the associativity-check cap {cap} (raise the cap to force the O(n^3) check)")]
    TableTooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A finite group whose elements are dense indices in [0, order).
pub trait Group: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, g: usize, h: usize) -> usize;
    fn inv(&self, g: usize) -> usize;

    fn is_involution(&self, g: usize) -> bool {
        g != self.identity() && self.mul(g, g) == self.identity()
    }
}

/// The opposite group of `G`: same elements, product reversed. Building a
/// Cayley graph over this wrapper realizes the mirrored semidirect product
/// convention.
pub struct OppositeGroup<'a, G: Group + ?Sized>(pub &'a G);

impl<G: Group + ?Sized> Group for OppositeGroup<'_, G> {
    fn order(&self) -> usize {
        self.0.order()
    }
    fn identity(&self) -> usize {
        self.0.identity()
    }
    fn mul(&self, g: usize, h: usize) -> usize {
        self.0.mul(h, g)
    }
    fn inv(&self, g: usize) -> usize {
        self.0.inv(g)
    }
}

/// Parameters of Z_M x|_A Z_N: pairs (x, y) with x mod M acting on y mod N by
/// multiplication with A^x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemidirectSpec {
    pub m: u64,
    pub a: u64,
    pub n: u64,
}

/// Element of a semidirect product, as explicit residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SdElement {
    pub x: u64,
    pub y: u64,
}

/// A validated semidirect product with the power table A^0..A^{M-1} mod N
/// precomputed, so the multiplication inner loop is table lookups and
/// modular adds/muls only.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    spec: SemidirectSpec,
    powers: Vec<u64>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    result
}

impl SemidirectGroup {
    /// Validates the spec: gcd(A, N) = 1 and A^M = 1 (mod N).
    pub fn new(spec: SemidirectSpec) -> Result<Self, GroupError> {
        let SemidirectSpec { m, a, n } = spec;
        if m == 0 || n == 0 || a == 0 || a >= n.max(2) {
            return Err(GroupError::BadParameters { m, a, n });
        }
        if gcd(a, n) != 1 {
            return Err(GroupError::ActionNotInvertible { a, n });
        }
        let power = pow_mod(a, m, n);
        if power != 1 % n {
            return Err(GroupError::ActionOrderMismatch { a, m, n, power });
        }
        let mut powers = Vec::with_capacity(m as usize);
        let mut p = 1 % n;
        for _ in 0..m {
            powers.push(p);
            p = p * a % n;
        }
        Ok(SemidirectGroup { spec, powers })
    }

    pub fn spec(&self) -> SemidirectSpec {
        self.spec
    }

    pub fn encode(&self, e: SdElement) -> usize {
        (e.x * self.spec.n + e.y) as usize
    }

    pub fn decode(&self, idx: usize) -> SdElement {
        SdElement {
            x: idx as u64 / self.spec.n,
            y: idx as u64 % self.spec.n,
        }
    }

    /// (x1, y1) * (x2, y2) = (x1 + x2 mod M, y1 * A^{x2} + y2 mod N).
    pub fn mul_elements(&self, g: SdElement, h: SdElement) -> SdElement {
        let SemidirectSpec { m, n, .. } = self.spec;
        SdElement {
            x: (g.x + h.x) % m,
            y: (g.y * self.powers[h.x as usize] + h.y) % n,
        }
    }

    pub fn inv_element(&self, g: SdElement) -> SdElement {
        let SemidirectSpec { m, n, .. } = self.spec;
        let x = (m - g.x) % m;
        let y = (n - g.y * self.powers[x as usize] % n) % n;
        SdElement { x, y }
    }
}

impl Group for SemidirectGroup {
    fn order(&self) -> usize {
        (self.spec.m * self.spec.n) as usize
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, g: usize, h: usize) -> usize {
        self.encode(self.mul_elements(self.decode(g), self.decode(h)))
    }
    fn inv(&self, g: usize) -> usize {
        self.encode(self.inv_element(self.decode(g)))
    }
}

/// Element of (Z_m x Z_m) x| Z_2. When c = 1 the Z_2 part swaps the two
/// coordinates of the factor it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TcElement {
    pub a: u64,
    pub b: u64,
    pub c: u8,
}

/// (Z_m x Z_m) x| Z_2 with coordinate-swap action; order 2 m^2.
#[derive(Debug, Clone, Copy)]
pub struct TwoCoordGroup {
    pub m: u64,
}

impl TwoCoordGroup {
    pub fn new(m: u64) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::BadParameters { m, a: 0, n: 0 });
        }
        Ok(TwoCoordGroup { m })
    }

    pub fn encode(&self, e: TcElement) -> usize {
        ((e.a * self.m + e.b) * 2 + e.c as u64) as usize
    }

    pub fn decode(&self, idx: usize) -> TcElement {
        let idx = idx as u64;
        TcElement {
            a: idx / 2 / self.m,
            b: idx / 2 % self.m,
            c: (idx % 2) as u8,
        }
    }

    /// ((a,b),c) * ((a',b'),c') = ((a,b) + swap^c(a',b'), c + c' mod 2).
    pub fn mul_elements(&self, g: TcElement, h: TcElement) -> TcElement {
        let (ha, hb) = if g.c == 1 { (h.b, h.a) } else { (h.a, h.b) };
        TcElement {
            a: (g.a + ha) % self.m,
            b: (g.b + hb) % self.m,
            c: (g.c + h.c) % 2,
        }
    }

    pub fn inv_element(&self, g: TcElement) -> TcElement {
        if g.c == 0 {
            TcElement { a: (self.m - g.a) % self.m, b: (self.m - g.b) % self.m, c: 0 }
        } else {
            // ((a,b),1)^-1 = ((-b,-a),1)
            TcElement { a: (self.m - g.b) % self.m, b: (self.m - g.a) % self.m, c: 1 }
        }
    }
}

impl Group for TwoCoordGroup {
    fn order(&self) -> usize {
        (2 * self.m * self.m) as usize
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, g: usize, h: usize) -> usize {
        self.encode(self.mul_elements(self.decode(g), self.decode(h)))
    }
    fn inv(&self, g: usize) -> usize {
        self.encode(self.inv_element(self.decode(g)))
    }
}

/// Default cap for the O(n^3) associativity check on table loads.
pub const TABLE_ASSOC_CAP: usize = 2000;

/// A group given by its full multiplication table. All four axioms are
/// verified on load: closure, associativity (full triple loop), two-sided
/// identity, two-sided inverses.
#[derive(Debug, Clone)]
pub struct TableGroup {
    table: Vec<usize>,
    n: usize,
    identity: usize,
    inverses: Vec<usize>,
}

impl TableGroup {
    pub fn from_table(rows: Vec<Vec<u64>>, assoc_cap: usize) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        if n > assoc_cap {
            return Err(GroupError::TableTooLarge { order: n, cap: assoc_cap });
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(GroupError::Parse {
                    line: 0,
                    msg: format!("row has {} entries, expected {}", row.len(), n),
                });
            }
            for &v in row {
                if v as usize >= n {
                    return Err(GroupError::NotClosed { value: v, order: n });
                }
                table.push(v as usize);
            }
        }
        let mul = |g: usize, h: usize| table[g * n + h];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or(GroupError::NoInverse { element: g })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(TableGroup { table, n, identity, inverses })
    }

    /// Loads the table file format: line 1 = n, then n rows of n indices.
    pub fn load(path: &Path, assoc_cap: usize) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_with_cap(&text, assoc_cap)
    }

    pub fn from_str_with_cap(text: &str, assoc_cap: usize) -> Result<Self, GroupError> {
        let mut lines = text.lines();
        let first = lines.next().ok_or(GroupError::Parse { line: 1, msg: "missing order".into() })?;
        let n: usize = first.trim().parse().map_err(|_| GroupError::Parse {
            line: 1,
            msg: format!("invalid order '{first}'"),
        })?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next().ok_or(GroupError::Parse {
                line: i + 2,
                msg: format!("missing row {i}"),
            })?;
            let row: Result<Vec<u64>, _> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u64>().map_err(|_| GroupError::Parse {
                        line: i + 2,
                        msg: format!("invalid entry '{tok}'"),
                    })
                })
                .collect();
            rows.push(row?);
        }
        Self::from_table(rows, assoc_cap)
    }
}

impl Group for TableGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.n + h]
    }
    fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }
}

/// Plain cyclic group Z_n, mostly for tests and small constructions.
#[derive(Debug, Clone, Copy)]
pub struct CyclicGroup {
    pub n: usize,
}

impl Group for CyclicGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, g: usize, h: usize) -> usize {
        (g + h) % self.n
    }
    fn inv(&self, g: usize) -> usize {
        (self.n - g) % self.n
    }
}
