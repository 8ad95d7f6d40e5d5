//! Witness groups: a transitive `G` with normal subgroups `N1` (transitive)
//! and `N2` (not transitive) of equal index and isomorphic quotients.
//!
//! For a degree `n` with a prime `p` dividing both `n` and `phi(n)`, take a
//! unit `i` of order `p` mod `n`, `tau = (1 2 ... n)` and `sigma` the
//! multiplication-by-`i` map on residues (point `k` is residue `k - 1`).
//! Then `G = <tau, sigma>`, `N1 = <tau>`, `N2 = <sigma, tau^p>`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::numthy::{self, euler_phi, is_prime};
use crate::perm::{gcd, Permutation};
use crate::quotient::{self, DEFAULT_QUOTIENT_BUDGET};

#[derive(Clone, Debug)]
pub struct Witness {
    pub n: usize,
    pub p: u64,
    pub i: u64,
    pub tau: Permutation,
    pub sigma: Permutation,
    pub g: PermGroup,
    pub n1: PermGroup,
    pub n2: PermGroup,
    pub verified: bool,
}

/// Multiplication by the unit `i` on residues mod `n`.
pub fn build_sigma(n: usize, i: u64) -> Result<Permutation> {
    if n == 0 || gcd(i % n as u64, n as u64) != 1 {
        return Err(Error::InvalidArgument(format!("{i} is not a unit mod {n}")));
    }
    let images: Vec<u32> = (0..n as u64).map(|r| (r * i % n as u64) as u32).collect();
    Permutation::from_images0(images)
}

/// Which parts of the existence hypothesis hold for `(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub p_prime: bool,
    pub p_divides_n: bool,
    pub p_divides_phi: bool,
}

impl Hypothesis {
    pub fn check(n: usize, p: u64) -> Result<Self> {
        let phi = euler_phi(n as u64)?;
        Ok(Self {
            p_prime: is_prime(p),
            p_divides_n: p != 0 && n as u64 % p == 0,
            p_divides_phi: p != 0 && phi % p == 0,
        })
    }

    pub fn holds(&self) -> bool {
        self.p_prime && self.p_divides_n && self.p_divides_phi
    }

    fn failure(&self, n: usize, p: u64) -> Error {
        let mut parts = Vec::new();
        if !self.p_prime {
            parts.push(format!("{p} is not prime"));
        }
        if !self.p_divides_n {
            parts.push(format!("{p} does not divide n = {n}"));
        }
        if !self.p_divides_phi {
            let phi = euler_phi(n as u64).unwrap_or(0);
            parts.push(format!("{p} does not divide phi({n}) = {phi}"));
        }
        Error::Hypothesis(format!(
            "existence hypothesis fails for n = {n}, p = {p}: {}",
            parts.join("; ")
        ))
    }
}

/// Smallest prime dividing both `n` and `phi(n)`.
pub fn smallest_valid_prime(n: usize) -> Option<u64> {
    let phi = euler_phi(n as u64).ok()?;
    numthy::Factorization::of(n as u64)
        .ok()?
        .primes()
        .find(|p| phi % p == 0)
}

pub fn construct_witness(n: usize, p: u64) -> Result<Witness> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree {n} must be at least 2")));
    }
    let hyp = Hypothesis::check(n, p)?;
    if !hyp.holds() {
        return Err(hyp.failure(n, p));
    }
    let i = numthy::unit_of_order(p, n as u64)?.expect("p divides phi(n)");
    let tau = Permutation::n_cycle(n);
    let sigma = build_sigma(n, i)?;
    let g = PermGroup::new(n, vec![tau.clone(), sigma.clone()])?;
    let n1 = PermGroup::new(n, vec![tau.clone()])?;
    let n2 = PermGroup::new(n, vec![sigma.clone(), tau.pow(p as i64)])?;
    let mut w = Witness {
        n,
        p,
        i,
        tau,
        sigma,
        g,
        n1,
        n2,
        verified: false,
    };
    let report = verify_witness(&w)?;
    if !report.passed() {
        return Err(Error::Hypothesis(format!(
            "constructed witness failed verification for n = {n}, p = {p}"
        )));
    }
    w.verified = true;
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub degree: usize,
    pub order_g: u128,
    pub order_n1: u128,
    pub order_n2: u128,
    pub index_n1: u128,
    pub index_n2: u128,
    pub n1_orbits: Vec<Vec<usize>>,
    pub n2_orbits: Vec<Vec<usize>>,
    pub clauses: Vec<Clause>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

/// Checks clauses (a)-(e) for a constructed witness. `N1`, `N2` must have
/// index exactly `p`.
pub fn verify_witness(w: &Witness) -> Result<VerificationReport> {
    let mut report = verify_groups(&w.g, &w.n1, &w.n2, Some(w.p as u128))?;

    // (e) |N2| = n, and a non-identity element of N2 has a fixed point.
    let order_ok = report.order_n2 == w.n as u128;
    let sigma_ok = w.sigma.order() == w.p
        && !w.sigma.is_identity()
        && w.sigma.has_fixed_point()
        && w.n2.contains(&w.sigma)?;
    let conj_ok = w.tau.conjugated_by(&w.sigma) == w.tau.pow(w.i as i64);
    report.clauses.push(Clause {
        id: "e",
        description: "|N2| = n and a non-identity element of N2 fixes a point",
        passed: order_ok && sigma_ok && conj_ok,
        detail: format!(
            "|N2| = {} (n = {}); sigma = {} fixes point 1: {}; sigma tau sigma^-1 = tau^{}: {}",
            report.order_n2,
            w.n,
            w.sigma,
            w.sigma.fixes(1),
            w.i,
            conj_ok
        ),
    });
    Ok(report)
}

/// Checks clauses (a)-(d) for arbitrary groups. When `expected_index` is
/// given, both indices must equal it.
pub fn verify_groups(
    g: &PermGroup,
    n1: &PermGroup,
    n2: &PermGroup,
    expected_index: Option<u128>,
) -> Result<VerificationReport> {
    let degree = g.degree();
    for h in [n1, n2] {
        if h.degree() != degree {
            return Err(Error::DegreeMismatch(degree, h.degree()));
        }
    }
    let (og, o1, o2) = (g.order(), n1.order(), n2.order());
    let (i1, i2) = (og / o1.max(1), og / o2.max(1));
    let mut clauses = Vec::new();

    clauses.push(Clause {
        id: "a",
        description: "G is transitive",
        passed: g.is_transitive(),
        detail: format!("G has {} orbit(s)", g.orbits().len()),
    });

    let index_ok = |idx: u128| expected_index.is_none_or(|p| idx == p);
    for (id, desc, h, idx, want_transitive) in [
        ("b", "N1 is normal in G, transitive, of the expected index", n1, i1, true),
        ("c", "N2 is normal in G, not transitive, of the expected index", n2, i2, false),
    ] {
        // not even a subgroup counts as not normal
        let normal = h.is_normal_in(g).unwrap_or_default();
        let transitive = h.is_transitive();
        clauses.push(Clause {
            id,
            description: desc,
            passed: normal && transitive == want_transitive && index_ok(idx),
            detail: format!(
                "normal: {normal}; transitive: {transitive}; index: {idx}{}",
                expected_index.map_or(String::new(), |p| format!(" (expected {p})"))
            ),
        });
    }

    let iso = compare_quotients(g, n1, n2);
    clauses.push(Clause {
        id: "d",
        description: "G/N1 is isomorphic to G/N2",
        passed: matches!(iso, Ok(true)),
        detail: match iso {
            Ok(true) => format!("isomorphic quotients of order {i1}"),
            Ok(false) => "quotients are not isomorphic".into(),
            Err(e) => format!("not decided: {e}"),
        },
    });

    Ok(VerificationReport {
        degree,
        order_g: og,
        order_n1: o1,
        order_n2: o2,
        index_n1: i1,
        index_n2: i2,
        n1_orbits: n1.orbits(),
        n2_orbits: n2.orbits(),
        clauses,
    })
}

fn compare_quotients(g: &PermGroup, n1: &PermGroup, n2: &PermGroup) -> Result<bool> {
    let t1 = quotient::quotient(g, n1, DEFAULT_QUOTIENT_BUDGET)?;
    let t2 = quotient::quotient(g, n2, DEFAULT_QUOTIENT_BUDGET)?;
    Ok(quotient::isomorphic(&t1, &t2)?.is_some())
}

#[derive(Serialize)]
pub struct WitnessJson<'a> {
    pub n: usize,
    pub p: u64,
    pub i: u64,
    pub tau: String,
    pub sigma: String,
    pub g: Vec<String>,
    pub n1: Vec<String>,
    pub n2: Vec<String>,
    pub verified: bool,
    pub report: &'a VerificationReport,
}

impl Witness {
    pub fn to_json<'a>(&self, report: &'a VerificationReport) -> WitnessJson<'a> {
        let gens = |h: &PermGroup| h.generators().iter().map(ToString::to_string).collect();
        WitnessJson {
            n: self.n,
            p: self.p,
            i: self.i,
            tau: self.tau.to_string(),
            sigma: self.sigma.to_string(),
            g: gens(&self.g),
            n1: gens(&self.n1),
            n2: gens(&self.n2),
            verified: self.verified,
            report,
        }
    }
}

/// What the two existence/nonexistence results say about degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DegreeStatus {
    /// A prime divides both `n` and `phi(n)`.
    WitnessExists { p: u64 },
    /// `n = pq`, `p < q` primes, `p` does not divide `q - 1`.
    NoWitness { p: u64, q: u64 },
    UnknownByThisArtifact,
}

pub fn classify_degree(n: usize) -> DegreeStatus {
    if let Some(p) = smallest_valid_prime(n) {
        return DegreeStatus::WitnessExists { p };
    }
    if let Ok(f) = numthy::Factorization::of(n as u64) {
        if let [(p, 1), (q, 1)] = f.factors[..] {
            if (q - 1) % p != 0 {
                return DegreeStatus::NoWitness { p, q };
            }
        }
    }
    DegreeStatus::UnknownByThisArtifact
}
