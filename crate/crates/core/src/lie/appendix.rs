//! Symbolic verification of the degree-one prolongation computation for
//! the truncated double-graded free Lie algebra.
//!
//! A candidate degree-1 element ω is determined by two 2×2 matrices
//! h′ = ω(e10), h″ = ω(e01) in g₀. Extending ω by the Leibniz rule over
//! n_{k+1} recovers, mechanically:
//!   (a) the consistency constraints b′ = a″, c″ = d′ from the doubly
//!       reachable elements,
//!   (b) the closed-form action on the level-(k+1) elements,
//!   (c) that truncation at level k forces h′ = h″ = 0 for k ≥ 4 (and a
//!       two-parameter residual family at k = 3).

use crate::algebra::{Mat, Rat};
use crate::lie::algebra::GradedLieAlgebra;
use crate::lie::nk::build_nk;
use crate::lie::LieError;
use serde::{Deserialize, Serialize};

/// Linear form in the eight symbols (a′, b′, c′, d′, a″, b″, c″, d″).
type LinForm = [Rat; 8];

const AP: usize = 0;
const BP: usize = 1;
const CP: usize = 2;
const DP: usize = 3;
const APP: usize = 4;
const BPP: usize = 5;
const CPP: usize = 6;
const DPP: usize = 7;

fn zero_form() -> LinForm {
    std::array::from_fn(|_| Rat::zero())
}

fn sym(i: usize) -> LinForm {
    let mut f = zero_form();
    f[i] = Rat::one();
    f
}

fn form_add(a: &LinForm, b: &LinForm) -> LinForm {
    std::array::from_fn(|i| &a[i] + &b[i])
}

fn form_scale(a: &LinForm, c: &Rat) -> LinForm {
    std::array::from_fn(|i| &a[i] * c)
}

fn form_is_zero(a: &LinForm) -> bool {
    a.iter().all(Rat::is_zero)
}

/// Value of a symbolic element: one linear form per basis index of the
/// ambient algebra.
#[derive(Clone)]
struct SymVec {
    coeffs: Vec<LinForm>,
}

impl SymVec {
    fn zero(dim: usize) -> Self {
        SymVec {
            coeffs: vec![zero_form(); dim],
        }
    }

    fn add(&self, other: &SymVec) -> SymVec {
        SymVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| form_add(a, b))
                .collect(),
        }
    }

    fn sub(&self, other: &SymVec) -> SymVec {
        self.add(&other.scale(&Rat::int(-1)))
    }

    fn scale(&self, c: &Rat) -> SymVec {
        SymVec {
            coeffs: self.coeffs.iter().map(|f| form_scale(f, c)).collect(),
        }
    }

    /// Bracket a fixed basis element `x` with this symbolic vector.
    fn bracket_left(&self, a: &GradedLieAlgebra, x: usize) -> SymVec {
        let mut out = SymVec::zero(self.coeffs.len());
        for (i, f) in self.coeffs.iter().enumerate() {
            if form_is_zero(f) {
                continue;
            }
            for (t, c) in a.bracket_basis(x, i) {
                out.coeffs[t] = form_add(&out.coeffs[t], &form_scale(f, &c));
            }
        }
        out
    }
}

/// The symbolic action of h = [a b; c d] ∈ g₀ extended as a derivation.
/// `which` selects the primed (h′) or double-primed (h″) symbol block.
struct G0Action {
    /// action[idx] = h(basis idx), a symbolic vector.
    action: Vec<SymVec>,
}

fn g0_action(a: &GradedLieAlgebra, offset: usize) -> G0Action {
    let dim = a.dim();
    let e10 = a.index("e10").unwrap();
    let e01 = a.index("e01").unwrap();
    let mut action: Vec<Option<SymVec>> = vec![None; dim];
    // h(e10) = a e10 + c e01 ; h(e01) = b e10 + d e01 (matrix columns).
    let mut v10 = SymVec::zero(dim);
    v10.coeffs[e10] = sym(offset); // a
    v10.coeffs[e01] = sym(offset + 2); // c
    let mut v01 = SymVec::zero(dim);
    v01.coeffs[e10] = sym(offset + 1); // b
    v01.coeffs[e01] = sym(offset + 3); // d
    action[e10] = Some(v10);
    action[e01] = Some(v01);
    // Levels ascending; h(e_{i+1,j}) = [h e10, e_ij] + [e10, h e_ij], with
    // the e01 route for i = 1 elements.
    let max_level = a.depth() as usize;
    for level in 2..=max_level {
        for idx in a.layer_indices(-(level as i32)) {
            let label = a.label(idx).to_string();
            let (i, j) = parse_eij(&label);
            let (gen, prev) = if i >= 2 || (i == 1 && j == 1) {
                (e10, a.index(&format!("e{}{}", i - 1, j)).unwrap())
            } else {
                (e01, a.index(&format!("e{}{}", i, j - 1)).unwrap())
            };
            // Map [h(gen), prev]: bracket of a symbolic combination of
            // e10/e01 with the basis element prev.
            let hg = action[gen].clone().unwrap();
            let mut first = SymVec::zero(dim);
            for (src, f) in hg.coeffs.iter().enumerate() {
                if form_is_zero(f) {
                    continue;
                }
                for (t, c) in a.bracket_basis(src, prev) {
                    first.coeffs[t] = form_add(&first.coeffs[t], &form_scale(f, &c));
                }
            }
            let second = action[prev].clone().unwrap().bracket_left(a, gen);
            action[idx] = Some(first.add(&second));
        }
    }
    G0Action {
        action: action.into_iter().map(|v| v.unwrap()).collect(),
    }
}

fn parse_eij(label: &str) -> (usize, usize) {
    let digits: Vec<u32> = label
        .chars()
        .filter(|c| c.is_ascii_digit())
        .map(|c| c.to_digit(10).unwrap())
        .collect();
    assert_eq!(digits.len(), 2, "label {label}");
    (digits[0] as usize, digits[1] as usize)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AppendixReport {
    pub k: usize,
    /// Row space of the double-route constraints equals {b′ − a″, c″ − d′}
    /// (only asserted for k ≥ 4; `true` means verified).
    pub route_constraints_match: bool,
    /// The displayed closed-form action on level-(k+1) elements matches,
    /// modulo the route constraints (k ≥ 4).
    pub closed_form_matches: bool,
    /// The derivation extension of g₀ matches
    /// (i−1)b, ((m−i)a + i d), (m−i−1)c on every level.
    pub h_action_formula_ok: bool,
    /// Dimension of the residual solution family after truncation.
    pub g1_residual_dim: usize,
    /// Truncation forces h′ = h″ = 0 (expected for k ≥ 4).
    pub forced_zero: bool,
    /// The concrete (h′, h″) pair supplied by the caller satisfies the
    /// full constraint system.
    pub given_pair_satisfies: bool,
}

impl AppendixReport {
    pub fn pass(&self) -> bool {
        let structural = self.h_action_formula_ok
            && if self.k >= 4 {
                self.route_constraints_match && self.closed_form_matches && self.forced_zero
            } else {
                self.g1_residual_dim == 2
            };
        structural && self.given_pair_satisfies
    }
}

/// Run the symbolic Appendix computation for n_k and test a concrete
/// candidate pair (h′, h″), each a 2×2 rational matrix `[[a, b], [c, d]]`.
pub fn verify_appendix_formula(
    k: usize,
    h_prime: &[[Rat; 2]; 2],
    h_dblprime: &[[Rat; 2]; 2],
) -> Result<AppendixReport, LieError> {
    if k < 3 {
        return Err(LieError::ParameterRange {
            message: format!("appendix verification needs k >= 3, got {k}"),
        });
    }
    // Work inside n_{k+1} so level-(k+1) elements are visible.
    let a = build_nk(k + 1)?;
    let dim = a.dim();
    let e10 = a.index("e10").unwrap();
    let e01 = a.index("e01").unwrap();
    let hp = g0_action(&a, 0); // primed block
    let hpp = g0_action(&a, 4); // double-primed block

    // h-action closed form on every level m >= 2:
    // h(e_{m-i,i}) = (i-1) b e_{m-i+1,i-1} + ((m-i) a + i d) e_{m-i,i}
    //              + (m-i-1) c e_{m-i-1,i+1}
    let mut h_action_ok = true;
    for level in 2..=(k + 1) {
        for idx in a.layer_indices(-(level as i32)) {
            let (i_, j_) = parse_eij(a.label(idx));
            let m = level;
            let i = j_; // e_{m-i, i} with m-i = i_, i = j_
            debug_assert_eq!(i_ + j_, m);
            let mut expect = SymVec::zero(dim);
            // (i-1) b
            if i >= 1 {
                if let Some(t) = a.index(&format!("e{}{}", m - i + 1, i - 1)) {
                    expect.coeffs[t] = form_scale(&sym(BP), &Rat::int(i as i64 - 1));
                } else if i as i64 - 1 != 0 {
                    // target absent: coefficient must be zero, which it is
                    // only when i = 1; e_{m,0} never exists for m >= 2.
                }
            }
            if let Some(t) = a.index(&format!("e{}{}", m - i, i)) {
                let c1 = form_scale(&sym(AP), &Rat::int((m - i) as i64));
                let c2 = form_scale(&sym(DP), &Rat::int(i as i64));
                expect.coeffs[t] = form_add(&c1, &c2);
            }
            if m >= i + 1 {
                if let Some(t) = a.index(&format!("e{}{}", m - i - 1, i + 1)) {
                    expect.coeffs[t] = form_scale(&sym(CP), &Rat::int((m - i) as i64 - 1));
                }
            }
            if !hp.action[idx]
                .sub(&expect)
                .coeffs
                .iter()
                .all(form_is_zero)
            {
                h_action_ok = false;
            }
        }
    }
    // Also check the derivation is route-independent (it preserves the
    // defining relations): recompute doubly-reachable elements by the
    // alternative route.
    for level in 3..=(k + 1) {
        for idx in a.layer_indices(-(level as i32)) {
            let (i, j) = parse_eij(a.label(idx));
            if i >= 2 && j >= 2 {
                let prev_alt = a.index(&format!("e{}{}", i, j - 1)).unwrap();
                let hg = &hp.action[e01];
                let mut first = SymVec::zero(dim);
                for (src, f) in hg.coeffs.iter().enumerate() {
                    if form_is_zero(f) {
                        continue;
                    }
                    for (t, c) in a.bracket_basis(src, prev_alt) {
                        first.coeffs[t] = form_add(&first.coeffs[t], &form_scale(f, &c));
                    }
                }
                let second = hp.action[prev_alt].bracket_left(&a, e01);
                let alt = first.add(&second);
                if !hp.action[idx].sub(&alt).coeffs.iter().all(form_is_zero) {
                    h_action_ok = false;
                }
            }
        }
    }

    // ω-table over n_{k+1}: ω(e_{ij}) one level down, by the primary route;
    // collect double-route differences.
    let mut omega: Vec<Option<SymVec>> = vec![None; dim];
    let mut diffs: Vec<LinForm> = Vec::new();
    // ω(e11) = [ω(e10), e01] + [e10, ω(e01)] = h′(e01) − h″(e10)
    let e11 = a.index("e11").unwrap();
    omega[e11] = Some(hp.action[e01].sub(&hpp.action[e10]));
    for level in 3..=(k + 1) {
        for idx in a.layer_indices(-(level as i32)) {
            let (i, j) = parse_eij(a.label(idx));
            let route = |gen: usize,
                         prev: usize,
                         h: &G0Action,
                         omega: &[Option<SymVec>]|
             -> SymVec {
                // ω([gen, prev]) = [ω(gen), prev] + [gen, ω(prev)]
                //                = h(prev) + [gen, ω(prev)]
                let second = omega[prev].clone().unwrap().bracket_left(&a, gen);
                h.action[prev].add(&second)
            };
            let primary = if i >= 2 {
                route(
                    e10,
                    a.index(&format!("e{}{}", i - 1, j)).unwrap(),
                    &hp,
                    &omega,
                )
            } else {
                route(
                    e01,
                    a.index(&format!("e{}{}", i, j - 1)).unwrap(),
                    &hpp,
                    &omega,
                )
            };
            if i >= 2 && j >= 2 {
                let alt = route(
                    e01,
                    a.index(&format!("e{}{}", i, j - 1)).unwrap(),
                    &hpp,
                    &omega,
                );
                for f in primary.sub(&alt).coeffs {
                    if !form_is_zero(&f) {
                        diffs.push(f);
                    }
                }
            }
            omega[idx] = Some(primary);
        }
    }

    // (a) Row space of diffs == span{b′ − a″, c″ − d′}.
    let expected_rows = vec![
        form_to_vec(&form_add(&sym(BP), &form_scale(&sym(APP), &Rat::int(-1)))),
        form_to_vec(&form_add(&sym(CPP), &form_scale(&sym(DP), &Rat::int(-1)))),
    ];
    let route_constraints_match = if k >= 4 {
        let diff_rows: Vec<Vec<Rat>> = diffs.iter().map(form_to_vec).collect();
        rowspace_equal(&diff_rows, &expected_rows)
    } else {
        diffs.is_empty()
    };

    // (b) Closed form on level k+1, modulo the route constraints
    // (substitute b′ := a″ and c″ := d′ on both sides).
    let mut closed_form_matches = true;
    if k >= 4 {
        for idx in a.layer_indices(-(k as i32 + 1)) {
            let (p, q) = parse_eij(a.label(idx));
            // e_{k-i, i+1}: p = k-i, q = i+1.
            let i = q - 1;
            debug_assert_eq!(p + q, k + 1);
            let mut expect = SymVec::zero(dim);
            let half = Rat::new(1, 2);
            let mut put = |target: Option<usize>, form: LinForm| {
                if let Some(t) = target {
                    expect.coeffs[t] = form_add(&expect.coeffs[t], &form);
                } else {
                    // Nonexistent target: the formula coefficient must be 0;
                    // callers only pass zero forms for those.
                }
            };
            let idx_of = |r: i64, s: i64| -> Option<usize> {
                if r >= 1 && s >= 1 {
                    a.index(&format!("e{r}{s}"))
                } else {
                    None
                }
            };
            let ki = (k - i) as i64;
            let ii = i as i64;
            // i(i-1)/2 b″ e_{k-i+1,i-1}
            put(
                idx_of(ki + 1, ii - 1),
                form_scale(&sym(BPP), &(&Rat::int(ii * (ii - 1)) * &half)),
            );
            // ((k-i) i a″ + i(i+1)/2 d″) e_{k-i,i}
            put(
                idx_of(ki, ii),
                form_add(
                    &form_scale(&sym(APP), &Rat::int(ki * ii)),
                    &form_scale(&sym(DPP), &(&Rat::int(ii * (ii + 1)) * &half)),
                ),
            );
            // ((k-i)(k-i-1)/2 a′ + (i+1)(k-i-1) d′) e_{k-i-1,i+1}
            put(
                idx_of(ki - 1, ii + 1),
                form_add(
                    &form_scale(&sym(AP), &(&Rat::int(ki * (ki - 1)) * &half)),
                    &form_scale(&sym(DP), &Rat::int((ii + 1) * (ki - 1))),
                ),
            );
            // (k-i-1)(k-i-2)/2 c′ e_{k-i-2,i+2}
            put(
                idx_of(ki - 2, ii + 2),
                form_scale(&sym(CP), &(&Rat::int((ki - 1) * (ki - 2)) * &half)),
            );
            let got = omega[idx].clone().unwrap();
            let diff = got.sub(&expect);
            for f in diff.coeffs {
                if !form_is_zero(&reduce_mod_constraints(&f)) {
                    closed_form_matches = false;
                }
            }
        }
    }

    // (c) Full truncation system: route diffs plus all level-(k+1) values
    // (zero in n_k) must vanish.
    let mut full_rows: Vec<Vec<Rat>> = diffs.iter().map(form_to_vec).collect();
    for idx in a.layer_indices(-(k as i32 + 1)) {
        for f in &omega[idx].as_ref().unwrap().coeffs {
            if !form_is_zero(f) {
                full_rows.push(form_to_vec(f));
            }
        }
    }
    let g1_residual_dim = if full_rows.is_empty() {
        8
    } else {
        8 - Mat::from_rows(full_rows.clone()).rank()
    };
    let forced_zero = g1_residual_dim == 0;

    // Does the given pair satisfy every constraint?
    let assignment: [Rat; 8] = [
        h_prime[0][0].clone(),
        h_prime[0][1].clone(),
        h_prime[1][0].clone(),
        h_prime[1][1].clone(),
        h_dblprime[0][0].clone(),
        h_dblprime[0][1].clone(),
        h_dblprime[1][0].clone(),
        h_dblprime[1][1].clone(),
    ];
    let given_pair_satisfies = full_rows.iter().all(|row| {
        let mut acc = Rat::zero();
        for (c, v) in row.iter().zip(&assignment) {
            acc += c * v;
        }
        acc.is_zero()
    });

    Ok(AppendixReport {
        k,
        route_constraints_match,
        closed_form_matches,
        h_action_formula_ok: h_action_ok,
        g1_residual_dim,
        forced_zero,
        given_pair_satisfies,
    })
}

fn form_to_vec(f: &LinForm) -> Vec<Rat> {
    f.to_vec()
}

/// Substitute b′ := a″ and c″ := d′ (fold columns BP into APP and CPP
/// into DP).
fn reduce_mod_constraints(f: &LinForm) -> LinForm {
    let mut out = f.clone();
    out[APP] = &out[APP] + &out[BP];
    out[BP] = Rat::zero();
    out[DP] = &out[DP] + &out[CPP];
    out[CPP] = Rat::zero();
    out
}

fn rowspace_equal(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    if a.is_empty() {
        return b.is_empty();
    }
    let ra = Mat::from_rows(a.to_vec()).rank();
    let rb = Mat::from_rows(b.to_vec()).rank();
    let mut joint = a.to_vec();
    joint.extend(b.to_vec());
    let rj = Mat::from_rows(joint).rank();
    ra == rb && rb == rj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero2() -> [[Rat; 2]; 2] {
        [
            [Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero()],
        ]
    }

    #[test]
    fn k4_constraints_and_forced_zero() {
        let r = verify_appendix_formula(4, &zero2(), &zero2()).unwrap();
        assert!(r.h_action_formula_ok, "g0 closed form");
        assert!(r.route_constraints_match, "b' = a'', c'' = d' recovered");
        assert!(r.closed_form_matches, "omega closed form");
        assert!(r.forced_zero, "truncation forces h' = h'' = 0");
        assert!(r.given_pair_satisfies);
        assert!(r.pass());
    }

    #[test]
    fn k3_two_parameter_family() {
        let r = verify_appendix_formula(3, &zero2(), &zero2()).unwrap();
        assert_eq!(r.g1_residual_dim, 2, "g1 of n_3 is 2-dimensional");
        assert!(!r.forced_zero);
        assert!(r.pass());
    }

    #[test]
    fn k5_same_structure() {
        let r = verify_appendix_formula(5, &zero2(), &zero2()).unwrap();
        assert!(r.route_constraints_match);
        assert!(r.closed_form_matches);
        assert!(r.forced_zero);
    }

    #[test]
    fn nonzero_pair_rejected_at_k4() {
        let mut h = zero2();
        h[0][0] = Rat::one();
        let r = verify_appendix_formula(4, &h, &zero2()).unwrap();
        assert!(!r.given_pair_satisfies);
        assert!(!r.pass());
    }
}
