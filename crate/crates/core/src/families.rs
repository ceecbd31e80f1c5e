//! Named tree families and their known generating seeds.
//!
//! Specs have a compact text form: `path:5`, `star:4`, `centipede:7`,
//! `corona:path:3,m=4`, `banana:2x7`, `alkane:6`, `isomer:neopentane`,
//! `nanostar:d2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{build, SeedSet};
use crate::tree::UnlabeledTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Isomer {
    Methane,
    Ethane,
    Propane,
    Butane,
    Isobutane,
    Pentane,
    Isopentane,
    Neopentane,
}

impl Isomer {
    pub const ALL: [Isomer; 8] = [
        Isomer::Methane,
        Isomer::Ethane,
        Isomer::Propane,
        Isomer::Butane,
        Isomer::Isobutane,
        Isomer::Pentane,
        Isomer::Isopentane,
        Isomer::Neopentane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Isomer::Methane => "methane",
            Isomer::Ethane => "ethane",
            Isomer::Propane => "propane",
            Isomer::Butane => "butane",
            Isomer::Isobutane => "isobutane",
            Isomer::Pentane => "pentane",
            Isomer::Isopentane => "isopentane",
            Isomer::Neopentane => "neopentane",
        }
    }

    pub fn carbons(self) -> usize {
        self.skeleton().0
    }

    /// Carbon count and carbon-carbon bonds.
    fn skeleton(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            Isomer::Methane => (1, &[]),
            Isomer::Ethane => (2, &[(0, 1)]),
            Isomer::Propane => (3, &[(0, 1), (1, 2)]),
            Isomer::Butane => (4, &[(0, 1), (1, 2), (2, 3)]),
            Isomer::Isobutane => (4, &[(0, 1), (0, 2), (0, 3)]),
            Isomer::Pentane => (5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            Isomer::Isopentane => (5, &[(0, 1), (1, 2), (2, 3), (1, 4)]),
            Isomer::Neopentane => (5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
        }
    }

    /// Generating seed read off the labeled drawings, if the isomer is
    /// realizable. Butane and isopentane differ from the sets printed in the
    /// accompanying text, which do not produce the right molecules.
    fn labeled_seed(self) -> Option<&'static [u64]> {
        match self {
            Isomer::Methane => Some(&[3, 4, 6]),
            Isomer::Ethane => Some(&[3, 5, 6, 8, 12]),
            Isomer::Propane => Some(&[3, 5, 6, 12, 15, 16, 20]),
            Isomer::Butane => Some(&[3, 5, 6, 12, 15, 17, 20, 32, 48]),
            Isomer::Isobutane => Some(&[3, 5, 6, 13, 15, 20, 21, 24, 28]),
            Isomer::Pentane => Some(&[3, 5, 6, 12, 15, 17, 20, 48, 64, 80, 96]),
            Isomer::Isopentane => Some(&[3, 5, 6, 12, 13, 15, 20, 21, 28, 32, 40, 48]),
            Isomer::Neopentane => None,
        }
    }
}

impl FromStr for Isomer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Isomer::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown isomer `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// P_n, n ≥ 1 vertices.
    Path(usize),
    /// K_{1,n}, n ≥ 1 leaves.
    Star(usize),
    /// P_n ∘ K_1, n ≥ 2.
    Centipede(usize),
    /// base ∘ K̄_m: every base vertex gets m ≥ 1 pendant vertices.
    Corona { base: Box<FamilySpec>, m: usize },
    /// B(n, m): n ≥ 1 copies of the star K_{1,m} (m ≥ 2), one leaf of each
    /// joined to a new root.
    Banana { n: usize, m: usize },
    /// Straight-chain C_nH_{2n+2}, n ≥ 1.
    Alkane(usize),
    Isomer(Isomer),
    NanostarD2,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match self {
            FamilySpec::Path(n) if *n < 1 => bad("path needs n >= 1".into()),
            FamilySpec::Star(n) if *n < 1 => bad("star needs n >= 1".into()),
            FamilySpec::Centipede(n) if *n < 2 => bad("centipede needs n >= 2".into()),
            FamilySpec::Corona { m, .. } if *m < 1 => bad("corona needs m >= 1".into()),
            FamilySpec::Corona { base, .. } => base.validate(),
            FamilySpec::Banana { n, m } if *n < 1 || *m < 2 => {
                bad(format!("banana needs n >= 1 and m >= 2, got {n}x{m}"))
            }
            FamilySpec::Alkane(n) if *n < 1 => bad("alkane needs n >= 1".into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Centipede(n) => write!(f, "centipede:{n}"),
            FamilySpec::Corona { base, m } => write!(f, "corona:{base},m={m}"),
            FamilySpec::Banana { n, m } => write!(f, "banana:{n}x{m}"),
            FamilySpec::Alkane(n) => write!(f, "alkane:{n}"),
            FamilySpec::Isomer(i) => write!(f, "isomer:{}", i.name()),
            FamilySpec::NanostarD2 => write!(f, "nanostar:d2"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidFamily(format!("cannot parse `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let spec = match kind {
            "path" => FamilySpec::Path(num(rest)?),
            "star" => FamilySpec::Star(num(rest)?),
            "centipede" => FamilySpec::Centipede(num(rest)?),
            "alkane" => FamilySpec::Alkane(num(rest)?),
            "isomer" => FamilySpec::Isomer(rest.parse()?),
            "nanostar" if rest == "d2" => FamilySpec::NanostarD2,
            "banana" => {
                let (n, m) = rest.split_once('x').ok_or_else(bad)?;
                FamilySpec::Banana {
                    n: num(n)?,
                    m: num(m)?,
                }
            }
            "corona" => {
                let (base, m) = rest.rsplit_once(",m=").ok_or_else(bad)?;
                FamilySpec::Corona {
                    base: Box::new(base.parse()?),
                    m: num(m)?,
                }
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Incremental edge-list builder for the generators.
#[derive(Default)]
struct Builder {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.order += 1;
        self.order - 1
    }

    fn pendant(&mut self, to: usize) -> usize {
        let v = self.vertex();
        self.edges.push((to, v));
        v
    }

    fn finish(self) -> UnlabeledTree {
        UnlabeledTree::from_edges(self.order, &self.edges)
            .expect("generators only emit trees")
            .relabel_bfs(0)
    }
}

fn path_tree(n: usize) -> UnlabeledTree {
    let mut b = Builder::default();
    let mut prev = b.vertex();
    for _ in 1..n {
        prev = b.pendant(prev);
    }
    b.finish()
}

fn corona(base: &UnlabeledTree, m: usize) -> UnlabeledTree {
    let mut b = Builder {
        order: base.order(),
        edges: base.edges(),
    };
    for v in 0..base.order() {
        for _ in 0..m {
            b.pendant(v);
        }
    }
    b.finish()
}

/// Carbon skeleton with every carbon padded to degree 4 by hydrogens.
fn hydrogenate(carbons: usize, bonds: &[(usize, usize)]) -> UnlabeledTree {
    let mut b = Builder {
        order: carbons,
        edges: bonds.to_vec(),
    };
    for c in 0..carbons {
        let deg = bonds.iter().filter(|&&(u, v)| u == c || v == c).count();
        for _ in deg..4 {
            b.pendant(c);
        }
    }
    b.finish()
}

/// The shape of the family member. Vertex ids are breadth-first from the
/// construction root, so output is stable.
pub fn generate(spec: &FamilySpec) -> Result<UnlabeledTree> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Path(n) => path_tree(*n),
        FamilySpec::Star(n) => {
            let mut b = Builder::default();
            let c = b.vertex();
            for _ in 0..*n {
                b.pendant(c);
            }
            b.finish()
        }
        FamilySpec::Centipede(n) => corona(&path_tree(*n), 1),
        FamilySpec::Corona { base, m } => corona(&generate(base)?, *m),
        FamilySpec::Banana { n, m } => {
            let mut b = Builder::default();
            let root = b.vertex();
            for _ in 0..*n {
                let joint = b.pendant(root);
                let center = b.pendant(joint);
                for _ in 1..*m {
                    b.pendant(center);
                }
            }
            b.finish()
        }
        FamilySpec::Alkane(n) => {
            let bonds: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            hydrogenate(*n, &bonds)
        }
        FamilySpec::Isomer(i) => {
            let (c, bonds) = i.skeleton();
            hydrogenate(c, bonds)
        }
        FamilySpec::NanostarD2 => {
            // A hub with three arms of length three, each ending in a vertex
            // that carries two pendants.
            let mut b = Builder::default();
            let hub = b.vertex();
            for _ in 0..3 {
                let mut v = hub;
                for _ in 0..3 {
                    v = b.pendant(v);
                }
                b.pendant(v);
                b.pendant(v);
            }
            b.finish()
        }
    })
}

fn pow2(k: usize) -> Result<u64> {
    u32::try_from(k)
        .ok()
        .and_then(|k| 1u64.checked_shl(k))
        .ok_or_else(|| Error::range(format!("2^{k} exceeds 64 bits")))
}

fn times(c: u64, x: u64) -> Result<u64> {
    c.checked_mul(x)
        .ok_or_else(|| Error::range(format!("{c}*{x} exceeds 64 bits")))
}

/// Seed for the straight chain with n ≥ 6 carbons 2, 4, …, 2^n. Hydrogens
/// are 1, 3, 6 on carbon 2; 5, 12 on 4; 15, 20 on 8; 5·2^(i−1) and 3·2^i on
/// carbon 2^i for 4 ≤ i ≤ n; and 2^(n+1) capping the far end.
fn long_alkane_seed(n: usize) -> Result<Vec<u64>> {
    let mut seed = vec![3, 6, 5, 12, 15];
    for i in 2..n {
        seed.push(times(5, pow2(i)?)?);
    }
    for i in 4..=n {
        seed.push(times(3, pow2(i)?)?);
    }
    seed.push(pow2(n + 1)?);
    Ok(seed)
}

/// Checks a drawing-derived seed against the generated shape.
fn checked_seed(spec: &FamilySpec, seed: &[u64]) -> Result<SeedSet> {
    let seed = SeedSet::new(seed.iter().copied())?;
    let (built, _) = build(&seed).to_tree();
    if !built.is_isomorphic(&generate(spec)?) {
        return Err(Error::InvalidFamily(format!(
            "seed {seed} does not generate {spec}"
        )));
    }
    Ok(seed)
}

/// A seed whose totient graph is the family member, when one is known.
pub fn known_seed(spec: &FamilySpec) -> Result<Option<SeedSet>> {
    spec.validate()?;
    let values: Vec<u64> = match spec {
        FamilySpec::Path(1) => vec![1],
        FamilySpec::Path(n) => vec![pow2(n - 1)?],
        FamilySpec::Star(n) => match n {
            1 => vec![1, 2],
            2 => vec![1, 2, 3],
            3 => vec![1, 2, 3, 4],
            4 => vec![1, 2, 3, 4, 6],
            _ => return Ok(None),
        },
        FamilySpec::Centipede(n) => {
            let mut v = Vec::with_capacity(2 * n);
            for i in 0..=*n {
                v.push(pow2(i)?);
            }
            for i in 2..=*n {
                v.push(times(3, pow2(i)?)?);
            }
            v
        }
        FamilySpec::Alkane(n) if *n <= 5 => {
            let isomer = [
                Isomer::Methane,
                Isomer::Ethane,
                Isomer::Propane,
                Isomer::Butane,
                Isomer::Pentane,
            ][n - 1];
            let seed = isomer.labeled_seed().expect("straight chains are realizable");
            return checked_seed(spec, seed).map(Some);
        }
        FamilySpec::Alkane(n) => long_alkane_seed(*n)?,
        FamilySpec::Isomer(i) => match i.labeled_seed() {
            Some(seed) => return checked_seed(spec, seed).map(Some),
            None => return Ok(None),
        },
        FamilySpec::NanostarD2 => vec![3, 256, 376, 384, 564],
        FamilySpec::Corona { .. } | FamilySpec::Banana { .. } => return Ok(None),
    };
    SeedSet::new(values).map(Some)
}
