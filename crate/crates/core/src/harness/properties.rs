//! The registered property suite.

use rand::Rng;
use serde_json::json;

use super::oracle::{brute_force_thm3_oracle, extremal_thm3_instance, ORACLE_MIN_STEPS};
use super::registry::{above_one, any_order, below_one, off_one, Dims, Orders, Property, Trial};
use super::sampling::*;
use crate::bounds::{fano_intermediate, fannes_bound, fano_bound, upper_bound_thm3_log_form, yanagi_comparison_bound};
use crate::classical::*;
use crate::error::Result;
use crate::operator::*;
use crate::quantum::*;
use crate::scalar::{alpha_log, binary_tsallis, g_of_t, phi_uv, ExtendedValue, Order};

fn ord(a: f64) -> Order {
    Order::new(a).expect("fixed order")
}

fn random_weights(n: usize, t: &mut Trial) -> Result<WeightSet> {
    let p = sample_distribution(n, &mut t.rng)?;
    let total = 0.2 + 3.0 * t.rng.random::<f64>();
    WeightSet::new(p.probs().iter().map(|x| x * total).collect())
}

fn full_rank_density(d: usize, t: &mut Trial) -> Result<DensityOperator> {
    let rho = sample_density(d, d, &mut t.rng)?;
    let s = 0.02 + 0.2 * t.rng.random::<f64>();
    let mixed = DensityOperator::maximally_mixed(d)?;
    DensityOperator::from_matrix(rho.matrix().scale(1.0 - s) + mixed.matrix().scale(s))
}

/// A pair that is close with probability ½ and independent otherwise.
fn density_pair(d: usize, t: &mut Trial) -> Result<(DensityOperator, DensityOperator)> {
    let rho = sample_density_any_rank(d, &mut t.rng)?;
    let sigma = if t.rng.random_bool(0.5) { sample_nearby_density(&rho, &mut t.rng)? } else { sample_density_any_rank(d, &mut t.rng)? };
    Ok((rho, sigma))
}

fn pair_json(a: &HermitianOperator, b: &HermitianOperator) -> serde_json::Value {
    json!({ "A": a.to_json(), "B": b.to_json() })
}

fn uniform_in(t: &mut Trial, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * t.rng.random::<f64>()
}

// ---- scalar kernel ----

fn alpha_log_identities(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let a = t.alpha();
    let xi = 4.0 * (1.0 - t.rng.random::<f64>());
    let z = 4.0 * (1.0 - t.rng.random::<f64>());
    t.inputs(|| json!({ "xi": xi, "z": z }));
    let (lx, lz) = (alpha_log(xi, o)?, alpha_log(z, o)?);
    let rhs_tail = xi.powf(1.0 - a) * lz;
    t.close_rel("product", alpha_log(xi * z, o)?, lx + rhs_tail, lx.abs() + rhs_tail.abs(), 1e-12);
    let inv = -xi.powf(a - 1.0) * lx;
    t.close_rel("reciprocal", alpha_log(1.0 / xi, o)?, inv, inv.abs(), 1e-12);
    let w = 10f64.powf(uniform_in(t, -3.0, 3.0));
    for near in [1.0 - 1e-7, 1.0 + 1e-7] {
        let err = (alpha_log(w, ord(near))? - w.ln()).abs();
        t.upper_tol("limit", err, 1e-6 * (1.0 + w.ln().abs()), 0.0);
    }
    Ok(())
}

fn binary_concavity(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (u, v): (f64, f64) = (t.rng.random(), t.rng.random());
    t.inputs(|| json!({ "u": u, "v": v }));
    let mid = binary_tsallis(0.5 * (u + v), o)?;
    let chord = 0.5 * (binary_tsallis(u, o)? + binary_tsallis(v, o)?);
    t.lower_tol("midpoint", mid, chord, 1e-12);
    t.close("symmetry", binary_tsallis(u, o)?, binary_tsallis(1.0 - u, o)?, 1e-12);
    Ok(())
}

fn lemma1(t: &mut Trial) -> Result<()> {
    let (u, v): (f64, f64) = (t.rng.random(), t.rng.random());
    let a = 0.5 * t.rng.random::<f64>();
    t.inputs(|| json!({ "u": u, "v": v, "alpha": a }));
    t.upper_tol("phi", phi_uv(u, v, a)?, 0.0, 1e-12);
    let fidelity = (u * v).sqrt() + ((1.0 - u) * (1.0 - v)).sqrt();
    let tt = (u - v).abs();
    t.upper_tol("fidelity", fidelity, (1.0 - tt * tt).sqrt(), 1e-12);
    t.lower_tol("g", 1.0 - fidelity, g_of_t(tt)?, 1e-12);
    Ok(())
}

fn phi_convexity(t: &mut Trial) -> Result<()> {
    let (u, v): (f64, f64) = (t.rng.random(), t.rng.random());
    let h = 1.0 / 40.0;
    let a = uniform_in(t, h, 0.5 - h);
    t.inputs(|| json!({ "u": u, "v": v, "alpha": a }));
    let second = phi_uv(u, v, a - h)? + phi_uv(u, v, a + h)? - 2.0 * phi_uv(u, v, a)?;
    t.lower_tol("second-difference", second, 0.0, 1e-9);
    Ok(())
}

fn series_coefficients(t: &mut Trial) -> Result<()> {
    let x = uniform_in(t, 0.0, 0.7);
    t.inputs(|| json!({ "t": x }));
    let mut sum = 0.0;
    let mut pw = 1.0;
    for n in 1..=60 {
        let c = t.eval.series_coeff(n)?;
        t.lower_tol("positive", c, 0.0, 0.0);
        pw *= x * x;
        sum += c * pw;
    }
    t.close("sum", sum, g_of_t(x)?, 1e-12);
    Ok(())
}

// ---- classical ----

fn classical_trace_distance(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    let q = sample_distribution(n, &mut t.rng)?;
    let r = sample_distribution(n, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json(), "R": r.to_json() }));
    let pq = trace_distance_classical(&p, &q)?;
    t.upper_tol("triangle", pq, trace_distance_classical(&p, &r)? + trace_distance_classical(&r, &q)?, 1e-12);
    t.close("symmetry", pq, trace_distance_classical(&q, &p)?, 0.0);
    t.upper_tol("at-most-one", pq, 1.0, 1e-12);
    let excess: f64 = p.probs().iter().zip(q.probs()).map(|(a, b)| (a - b).max(0.0)).sum();
    t.close("best-event", pq, excess, 1e-14);
    Ok(())
}

fn entropy_relations(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    t.inputs(|| p.to_json());
    let h = tsallis_entropy(&p, o);
    let r = renyi_entropy(&p, o);
    if !o.near_one() {
        let s = 1.0 - o.alpha();
        let via = (s * h).ln_1p() / s;
        t.close_rel("tsallis-renyi", r, via, r.abs(), 1e-10);
    }
    t.lower_tol("nonnegative", h, 0.0, 1e-12);
    t.upper_tol("maximum", h, alpha_log(n as f64, o)?, 1e-12);
    t.upper_tol("renyi-maximum", r, (n as f64).ln(), 1e-12);
    Ok(())
}

fn homogeneity(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let a = random_weights(t.dim, t)?;
    let b = random_weights(t.dim, t)?;
    t.inputs(|| json!({ "A": a.weights(), "B": b.weights() }));
    let base = tsallis_rel_entropy(&a, &b, o)?;
    for lambda in [0.5, 2.0, 7.3] {
        let scaled = tsallis_rel_entropy(&a.scaled(lambda)?, &b.scaled(lambda)?, o)?;
        let expect = base.scale(lambda);
        match (scaled, expect) {
            (ExtendedValue::Finite(x), ExtendedValue::Finite(y)) => t.close_rel("scaling", x, y, y, 1e-10),
            (x, y) => t.close("scaling", x, y, 0.0),
        }
    }
    Ok(())
}

fn joint_convexity(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let (a1, a2, b1, b2) = (random_weights(n, t)?, random_weights(n, t)?, random_weights(n, t)?, random_weights(n, t)?);
    t.inputs(|| json!({ "A1": a1.weights(), "A2": a2.weights(), "B1": b1.weights(), "B2": b2.weights() }));
    let h1 = tsallis_rel_entropy(&a1, &b1, o)?;
    let h2 = tsallis_rel_entropy(&a2, &b2, o)?;
    for k in 1..10 {
        let th = k as f64 / 10.0;
        let mixed = tsallis_rel_entropy(&a1.mix(&a2, th)?, &b1.mix(&b2, th)?, o)?;
        let chord = h1.scale(th) + h2.scale(1.0 - th);
        t.upper_tol("convexity", mixed, chord, 1e-10 * (1.0 + chord.to_f64().abs()));
    }
    Ok(())
}

fn shift_bound(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let (a, b, c) = (random_weights(n, t)?, random_weights(n, t)?, random_weights(n, t)?);
    t.inputs(|| json!({ "A": a.weights(), "B": b.weights(), "C": c.weights() }));
    let shifted = tsallis_rel_entropy(&a.plus(&c)?, &b.plus(&c)?, o)?;
    let base = tsallis_rel_entropy(&a, &b, o)?;
    t.upper_tol("shift", shifted, base, 1e-10 * (1.0 + base.to_f64().abs()));
    Ok(())
}

fn qbar_reduction(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let q = sample_distribution(n, &mut t.rng)?;
    let p = if t.rng.random_bool(0.5) { sample_distribution(n, &mut t.rng)? } else { Distribution::point_mass(n, t.rng.random_range(0..n))? };
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let q0 = minimal_probability(&q, &p.to_weights())?;
    if !(q0 > 0.0) {
        return Ok(());
    }
    let qbar = qbar_construction(&p, &q)?;
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for j in p.support() {
        let (pj, qj, bj) = (p.probs()[j], q.probs()[j], qbar.weights()[j]);
        t.lower_tol("qbar-floor", bj, q0, 0.0);
        t.upper_tol("qbar-below-q", bj, qj, 1e-15);
        t.lower_tol("shifted-nonnegative", pj - qj + bj, 0.0, 1e-15);
        top.push((pj - qj + bj).max(0.0));
        bottom.push(bj);
    }
    let restricted_p = WeightSet::new(p.support().iter().map(|&j| p.probs()[j]).collect())?;
    let restricted_q = WeightSet::new(p.support().iter().map(|&j| q.probs()[j]).collect())?;
    let full = tsallis_rel_entropy(&restricted_p, &restricted_q, o)?;
    let reduced = tsallis_rel_entropy(&WeightSet::new(top)?, &WeightSet::new(bottom)?, o)?;
    t.upper_tol("reduction", full, reduced, 1e-10 * (1.0 + reduced.to_f64().abs()));
    Ok(())
}

fn classical_order_chain(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    let q = sample_distribution_floored(n, 1e-3 / n as f64, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let (pw, qw) = (p.to_weights(), q.to_weights());
    let kl = relative_entropy(&p, &q)?;
    for a in [0.3, 0.7] {
        t.upper_tol("below-one", tsallis_rel_entropy(&pw, &qw, ord(a))?, kl, 1e-10);
    }
    for b in [1.5, 2.0] {
        t.upper_tol("above-one", kl, tsallis_rel_entropy(&pw, &qw, ord(b))?, 1e-10);
    }
    Ok(())
}

fn renyi_relative(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    let q = sample_distribution(n, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let r = renyi_rel_entropy(&p, &q, o)?;
    let h = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o)?;
    t.lower_tol("nonnegative", r, 0.0, 1e-12);
    t.lower_tol("tsallis-nonnegative", h, 0.0, 1e-12);
    t.close("self", renyi_rel_entropy(&p, &p, o)?, 0.0, 1e-12);
    if let (ExtendedValue::Finite(r), ExtendedValue::Finite(h)) = (r, h) {
        if !o.near_one() {
            let s = o.alpha() - 1.0;
            let via = (s * h).ln_1p() / s;
            t.close_rel("from-tsallis", r, via, r, 1e-10);
        }
    }
    Ok(())
}

fn f_divergence_generators(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    let q = sample_distribution(n, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let d = trace_distance_classical(&p, &q)?;
    t.close("abs-deviation", f_divergence(&p, &q, &Generator::AbsDeviation)?, 2.0 * d, 1e-12);
    t.close("linear", f_divergence(&p, &q, &Generator::Linear)?, 0.0, 1e-12);
    let kl = relative_entropy(&p, &q)?;
    t.close_rel("kullback-leibler", f_divergence(&p, &q, &Generator::KullbackLeibler)?.to_f64(), kl.to_f64(), kl.to_f64(), 1e-12);
    if !o.near_one() {
        let sf = f_divergence(&p, &q, &Generator::power(o)?)?.to_f64();
        let h = tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o)?.to_f64();
        t.close_rel("power", sf - 1.0 / (o.alpha() - 1.0), h, h, 1e-10);
    }
    Ok(())
}

fn chain_rule(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let j = sample_joint_mixed(t.dim, &mut t.rng)?;
    t.inputs(|| j.to_json());
    let py = Distribution::from_weights(&j.marginal_y())?;
    let joint = joint_tsallis_entropy(&j, o);
    let split = tsallis_entropy(&py, o) + conditional_tsallis_entropy(&j, o);
    t.close("chain-rule", joint, split, 1e-12);
    Ok(())
}

fn coupling(t: &mut Trial) -> Result<()> {
    let n = t.dim;
    let p = sample_distribution(n, &mut t.rng)?;
    let q = sample_distribution(n, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let j = maximal_coupling(&p, &q)?;
    for (m, e) in j.marginal_x().iter().zip(p.probs()) {
        t.close("marginal-x", *m, *e, 1e-14);
    }
    for (m, e) in j.marginal_y().iter().zip(q.probs()) {
        t.close("marginal-y", *m, *e, 1e-14);
    }
    t.close("error-is-distance", error_probability(&j), trace_distance_classical(&p, &q)?, 1e-12);
    Ok(())
}

// ---- operators ----

fn spectral_reconstruction(t: &mut Trial) -> Result<()> {
    let m = sample_hermitian(t.dim, &mut t.rng);
    let x = HermitianOperator::new(m)?;
    t.inputs(|| x.to_json());
    let spec = eigendecompose(&x);
    let scale = x.norm().max(f64::MIN_POSITIVE);
    t.upper_tol("reconstruct", (spec.reconstruct() - x.matrix()).norm() / scale, 0.0, 1e-10);
    let mut sum = nalgebra::DMatrix::zeros(x.dim(), x.dim());
    for (value, proj) in spec.projectors() {
        sum += proj.matrix().scale(value);
    }
    t.upper_tol("projectors", (sum - x.matrix()).norm() / scale, 0.0, 1e-10);
    Ok(())
}

fn power_composition(t: &mut Trial) -> Result<()> {
    let d = t.dim;
    let rank = t.rng.random_range(1..=d);
    let mut w: Vec<f64> = sample_distribution_floored(rank, 0.01 / rank as f64, &mut t.rng)?.probs().to_vec();
    w.resize(d, 0.0);
    let u = random_unitary(d, &mut t.rng);
    let a = PositiveOperator::diagonal(&w)?.conjugated(&u)?;
    t.inputs(|| a.to_json());
    for s in [-1.0, 0.3, 0.5, 2.0] {
        let inner = power_on_support(&a, s)?;
        for e in [-1.0, 0.3, 0.5, 2.0] {
            let lhs = power_on_support(&inner, e)?;
            let rhs = power_on_support(&a, s * e)?;
            let err = (lhs.matrix() - rhs.matrix()).norm() / rhs.norm().max(1.0);
            t.upper_tol("composition", err, 0.0, 1e-9);
        }
    }
    Ok(())
}

fn quantum_trace_distance(t: &mut Trial) -> Result<()> {
    let d = t.dim;
    let rho = sample_density_any_rank(d, &mut t.rng)?;
    let sigma = sample_density_any_rank(d, &mut t.rng)?;
    let omega = sample_density_any_rank(d, &mut t.rng)?;
    let u = random_unitary(d, &mut t.rng);
    t.inputs(|| json!({ "rho": rho.to_json(), "sigma": sigma.to_json(), "omega": omega.to_json() }));
    let rs = trace_distance_quantum(&rho, &sigma)?;
    let via = trace_distance_quantum(&rho, &omega)? + trace_distance_quantum(&omega, &sigma)?;
    t.upper_tol("triangle", rs, via, 1e-10);
    let (r2, s2) = (rho.conjugated(&u)?, sigma.conjugated(&u)?);
    let rotated = trace_distance_quantum(&r2, &s2)?;
    t.close("unitary", rotated, rs, 1e-10);
    t.upper_tol("at-most-one", rs, 1.0, 1e-12);
    let inner = hs_inner(&rho, &sigma)?;
    t.close("hs-real", inner.im, 0.0, 1e-14);
    t.lower_tol("hs-nonnegative", inner.re, 0.0, 1e-14);
    let purity: f64 = rho.spectral().eigenvalues().iter().map(|l| l * l).sum();
    t.close("hs-purity", hs_inner(&rho, &rho)?.re, purity, 1e-12);
    Ok(())
}

fn pinching(t: &mut Trial) -> Result<()> {
    let d = t.dim;
    let (rho, sigma) = density_pair(d, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let bases = [PinchingBasis::from_difference(&rho, &sigma)?, PinchingBasis::new(random_unitary(d, &mut t.rng))?];
    for basis in &bases {
        let once = pinching_map(&rho, basis)?;
        let twice = pinching_map(&once, basis)?;
        t.upper_tol("idempotent", (twice.matrix() - once.matrix()).norm(), 0.0, 1e-10);
        t.close("trace", once.trace(), 1.0, 1e-12);
        let min = once.spectral().eigenvalues().last().copied().unwrap_or(0.0);
        t.lower_tol("positive", min, 0.0, 1e-12);
    }
    Ok(())
}

fn jordan(t: &mut Trial) -> Result<()> {
    let d = t.dim;
    let (x, y) = density_pair(d, t)?;
    t.inputs(|| pair_json(&x, &y));
    let (plus, minus) = jordan_projectors(&x, &y)?;
    let diff = x.minus(&y)?;
    let on_plus = HermitianOperator::new(plus.matrix() * diff.matrix() * plus.matrix())?;
    let on_minus = HermitianOperator::new(minus.matrix() * diff.matrix() * minus.matrix())?;
    let min_plus = on_plus.spectral().eigenvalues().last().copied().unwrap_or(0.0);
    let max_minus = on_minus.spectral().eigenvalues().first().copied().unwrap_or(0.0);
    t.lower_tol("plus-part", min_plus, 0.0, 1e-10);
    t.upper_tol("minus-part", max_minus, 0.0, 1e-10);
    let (u_plus, u_minus) = coarse_grain_two_point(&x, &plus, &minus)?;
    let (v_plus, _) = coarse_grain_two_point(&y, &plus, &minus)?;
    t.close("total", u_plus + u_minus, 1.0, 1e-12);
    t.close("distance", u_plus - v_plus, trace_distance_quantum(&x, &y)?, 1e-12);
    Ok(())
}

// ---- quantum divergences ----

fn classical_consistency(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (rho, sigma, p, q) = sample_commuting_pair(t.dim, &mut t.rng)?;
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let tol = 1e-10;
    let pairs = [
        (quantum_tsallis_entropy(&rho, o), tsallis_entropy(&p, o)),
        (quantum_renyi_entropy(&rho, o), renyi_entropy(&p, o)),
        (quantum_tsallis_rel_entropy(&rho, &sigma, o)?.to_f64(), tsallis_rel_entropy(&p.to_weights(), &q.to_weights(), o)?.to_f64()),
        (quantum_renyi_rel_entropy(&rho, &sigma, o)?.to_f64(), renyi_rel_entropy(&p, &q, o)?.to_f64()),
        (quantum_relative_entropy(&rho, &sigma)?.to_f64(), relative_entropy(&p, &q)?.to_f64()),
    ];
    for (qv, cv) in pairs {
        t.close_rel("quantity", qv, cv, cv, tol);
    }
    if !o.near_one() {
        let spec = FDivergenceSpec::power(o)?;
        let qv = quantum_f_divergence(&rho, &sigma, &spec)?.to_f64();
        let cv = f_divergence(&p, &q, &spec.generator)?.to_f64();
        t.close_rel("f-divergence", qv, cv, cv, tol);
    }
    Ok(())
}

fn pinching_monotonicity(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (rho, sigma) = density_pair(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let before = quantum_tsallis_rel_entropy(&rho, &sigma, o)?;
    let bases = [PinchingBasis::from_difference(&rho, &sigma)?, PinchingBasis::new(random_unitary(t.dim, &mut t.rng))?];
    for basis in &bases {
        let a = PositiveOperator::new(pinching_map(&rho, basis)?)?;
        let b = PositiveOperator::new(pinching_map(&sigma, basis)?)?;
        t.upper("pinched", quantum_tsallis_rel_entropy(&a, &b, o)?, before);
    }
    Ok(())
}

fn theorem1_floor(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (rho, sigma) = density_pair(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let spec = FDivergenceSpec::power(o)?;
    let value = match quantum_f_divergence(&rho, &sigma, &spec) {
        Ok(v) => v,
        Err(_) => quantum_f_divergence_limit(&rho, &sigma, &spec)?,
    };
    t.lower("floor", value, theorem1_classical_floor(&rho, &sigma, &spec)?);
    Ok(())
}

fn limit_matches_direct(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let rho = full_rank_density(t.dim, t)?;
    let sigma = full_rank_density(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let spec = FDivergenceSpec::power(o)?;
    let direct = quantum_f_divergence(&rho, &sigma, &spec)?.to_f64();
    let limit = quantum_f_divergence_limit(&rho, &sigma, &spec)?.to_f64();
    t.close_rel("limit", limit, direct, direct, 1e-8);
    Ok(())
}

fn quantum_pinsker_kl(t: &mut Trial) -> Result<()> {
    let (rho, sigma) = density_pair(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let tau = trace_distance_quantum(&rho, &sigma)?;
    t.lower("pinsker", quantum_relative_entropy(&rho, &sigma)?, 2.0 * tau * tau);
    Ok(())
}

fn quantum_order_chain(t: &mut Trial) -> Result<()> {
    let rho = full_rank_density(t.dim, t)?;
    let sigma = if t.rng.random_bool(0.5) { sample_nearby_density(&rho, &mut t.rng)? } else { full_rank_density(t.dim, t)? };
    t.inputs(|| pair_json(&rho, &sigma));
    let kl = quantum_relative_entropy(&rho, &sigma)?;
    for a in [0.3, 0.7] {
        t.upper("below-one", quantum_tsallis_rel_entropy(&rho, &sigma, ord(a))?, kl);
    }
    for b in [1.5, 2.0] {
        t.upper("above-one", kl, quantum_tsallis_rel_entropy(&rho, &sigma, ord(b))?);
    }
    Ok(())
}

fn unitary_invariance(t: &mut Trial) -> Result<()> {
    let o = t.order;
    // Large α amplifies rounding in small eigenvalues of σ, so keep σ well conditioned there.
    let (rho, sigma) = if o.above_one() { (full_rank_density(t.dim, t)?, full_rank_density(t.dim, t)?) } else { density_pair(t.dim, t)? };
    let u = random_unitary(t.dim, &mut t.rng);
    t.inputs(|| pair_json(&rho, &sigma));
    let (r2, s2) = (rho.conjugated(&u)?, sigma.conjugated(&u)?);
    let before = [
        quantum_tsallis_entropy(&rho, o),
        quantum_renyi_entropy(&rho, o),
        quantum_tsallis_rel_entropy(&rho, &sigma, o)?.to_f64(),
        quantum_renyi_rel_entropy(&rho, &sigma, o)?.to_f64(),
        quantum_relative_entropy(&rho, &sigma)?.to_f64(),
    ];
    let after = [
        quantum_tsallis_entropy(&r2, o),
        quantum_renyi_entropy(&r2, o),
        quantum_tsallis_rel_entropy(&r2, &s2, o)?.to_f64(),
        quantum_renyi_rel_entropy(&r2, &s2, o)?.to_f64(),
        quantum_relative_entropy(&r2, &s2)?.to_f64(),
    ];
    for (b, a) in before.iter().zip(&after) {
        if b.is_infinite() || a.is_infinite() {
            t.close("invariance", *a, *b, 0.0);
        } else {
            t.close_rel("invariance", *a, *b, *b, 1e-9);
        }
    }
    Ok(())
}

// ---- bounds ----

fn theorem2(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let d = t.dim;
    let theta = if t.rng.random_bool(0.5) { 1.0 } else { 2.5 };
    let (rho, sigma) = density_pair(d, t)?;
    let a = rho.as_positive().scaled(theta)?;
    let b = sigma.as_positive().scaled(theta)?;
    t.inputs(|| json!({ "theta": theta, "A": a.to_json(), "B": b.to_json() }));
    let tol = t.tolerance;
    let r = t.eval.check_pinsker(&a, &b, o, tol)?;
    t.report("pinsker", &r);
    Ok(())
}

fn binary_pair(t: &mut Trial) -> (f64, f64) {
    let tau = uniform_in(t, 0.01, 0.6);
    let centre = if t.rng.random_bool(0.5) { 0.5 } else { uniform_in(t, tau / 2.0, 1.0 - tau / 2.0) };
    (centre + tau / 2.0, centre - tau / 2.0)
}

fn theorem2_binary(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (u, v) = binary_pair(t);
    t.inputs(|| json!({ "u": u, "v": v }));
    let p = WeightSet::new(vec![u, 1.0 - u])?;
    let q = WeightSet::new(vec![v, 1.0 - v])?;
    let h = tsallis_rel_entropy(&p, &q, o)?;
    let tau = (u - v).abs();
    t.lower("pinsker", h, t.eval.pinsker_lower_bound(1.0, tau, o)?);
    for n in 1..=4 {
        t.lower("series", h, t.eval.pinsker_series_bound(1.0, tau, o, n)?);
    }
    Ok(())
}

fn series_dominance(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let theta = uniform_in(t, 0.1, 3.0);
    let tau = theta * t.rng.random::<f64>();
    t.inputs(|| json!({ "theta": theta, "tau": tau }));
    let full = t.eval.pinsker_lower_bound(theta, tau, o)?;
    let mut prev = 0.0;
    for n in 1..=10 {
        let s = t.eval.pinsker_series_bound(theta, tau, o, n)?;
        t.lower_tol("increasing", s, prev, 1e-12);
        t.upper_tol("below-closed-form", s, full, 1e-12);
        prev = s;
    }
    Ok(())
}

fn renyi_pinsker(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (rho, sigma) = density_pair(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let tol = t.tolerance;
    let r = t.eval.check_renyi_pinsker(&rho, &sigma, o, tol)?;
    t.report("renyi-pinsker", &r);
    Ok(())
}

fn theorem3(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let q = if t.rng.random_bool(0.5) { sample_distribution_floored(n, 0.2 / n as f64, &mut t.rng)? } else { sample_distribution(n, &mut t.rng)? };
    let p = match t.rng.random_range(0..3) {
        0 => sample_distribution(n, &mut t.rng)?,
        1 => {
            let r = sample_distribution(n, &mut t.rng)?;
            let s = 10f64.powf(-3.0 * t.rng.random::<f64>());
            Distribution::from_weights(&q.probs().iter().zip(r.probs()).map(|(a, b)| (1.0 - s) * a + s * b).collect::<Vec<_>>())?
        }
        _ => {
            let keep: Vec<bool> = (0..n).map(|j| j == 0 || t.rng.random_bool(0.5)).collect();
            let r = sample_distribution(n, &mut t.rng)?;
            let mask = |w: &[f64]| w.iter().zip(&keep).map(|(x, k)| if *k { *x } else { 0.0 }).collect::<Vec<_>>();
            let p = Distribution::from_weights(&mask(r.probs()))?;
            let q = Distribution::from_weights(&mask(q.probs()))?;
            t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
            let tol = t.tolerance;
            let r = t.eval.check_thm3(&p, &q, o, tol)?;
            t.report("thm3", &r);
            return Ok(());
        }
    };
    t.inputs(|| json!({ "P": p.to_json(), "Q": q.to_json() }));
    let tol = t.tolerance;
    let r = t.eval.check_thm3(&p, &q, o, tol)?;
    t.report("thm3", &r);
    Ok(())
}

fn theorem3_forms(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let q0 = uniform_in(t, 1e-3, 0.5);
    let tau = (1.0 - q0) * t.rng.random::<f64>();
    t.inputs(|| json!({ "q0": q0, "tau": tau }));
    let closed = t.eval.upper_bound_thm3(q0, tau, o)?;
    let logf = upper_bound_thm3_log_form(q0, tau, o)?;
    t.close_rel("log-form", closed, logf, logf, 1e-10);
    let below = t.eval.upper_bound_thm3(q0, q0 * (1.0 - 1e-12), o)?;
    let above = t.eval.upper_bound_thm3(q0, q0 * (1.0 + 1e-12), o)?;
    t.close_rel("continuity", below, above, above, 1e-10);
    Ok(())
}

fn theorem3_extremal(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    let q0 = if n == 2 && t.rng.random_bool(0.5) { 0.5 } else { uniform_in(t, 1e-3, 1.0 / n as f64) };
    let tau = if t.rng.random_bool(0.5) { q0 * t.rng.random::<f64>() } else { (1.0 - q0) * t.rng.random::<f64>() };
    t.inputs(|| json!({ "q0": q0, "tau": tau, "n": n }));
    let e = extremal_thm3_instance(q0, tau, o, n)?;
    let tau_e = trace_distance_classical(&e.p_extremal, &e.q_base)?;
    let q0_e = minimal_probability(&e.q_base, &e.p_extremal.to_weights())?;
    t.close("construction-tau", tau_e, tau, 1e-12);
    t.close("construction-q0", q0_e, q0, 1e-12);
    let bound = t.eval.upper_bound_thm3(q0_e, tau_e, o)?;
    t.upper_tol("extremal-below-bound", e.measured, bound, 1e-9 * (1.0 + bound.abs()));
    if tau <= q0 && (n >= 3 || q0 == 0.5) {
        t.close("extremal-attains", e.measured, bound, 1e-10);
    }
    let oracle = brute_force_thm3_oracle(q0, tau, o, n, ORACLE_MIN_STEPS)?;
    let bound_here = t.eval.upper_bound_thm3(q0, tau, o)?;
    t.upper_tol("oracle-sound", oracle, bound_here, 1e-9 * (1.0 + bound_here.abs()));
    t.close("oracle-reaches-bound", oracle, bound_here, 1e-9 * (1.0 + bound_here.abs()));
    Ok(())
}

fn theorem4(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let j = sample_joint_mixed(t.dim, &mut t.rng)?;
    t.inputs(|| j.to_json());
    let tol = t.tolerance;
    let r = t.eval.check_fano(&j, o, tol)?;
    t.report("fano", &r);
    let mid = fano_intermediate(&j, o)?;
    t.upper("measured-below-intermediate", conditional_tsallis_entropy(&j, o), mid);
    t.upper("intermediate-below-closed-form", mid, r.bound);
    Ok(())
}

fn bound_monotonicity(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let n = t.dim;
    // Both bounds peak at P_e = (N−1)/N.
    let hi = (n as f64 - 1.0) / n as f64;
    let (x, y): (f64, f64) = (hi * t.rng.random::<f64>(), hi * t.rng.random::<f64>());
    let (lo, up) = (x.min(y), x.max(y));
    t.inputs(|| json!({ "lo": lo, "hi": up, "n": n }));
    t.upper_tol("fano", t.eval.fano_bound(lo, n, o)?, t.eval.fano_bound(up, n, o)?, 1e-12);
    t.upper_tol("fannes", fannes_bound(lo, n, o)?, fannes_bound(up, n, o)?, 1e-12);
    // Fano's bound with the plain Pe-weighted tail is never smaller.
    let plain = binary_tsallis(up, o)? + up * alpha_log((n - 1) as f64, o)?;
    t.upper_tol("improves-plain", fano_bound(up, n, o)?, plain, 1e-12);
    Ok(())
}

fn theorem5(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let (rho, sigma) = density_pair(t.dim, t)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let tol = t.tolerance;
    let r = t.eval.check_fannes(&rho, &sigma, o, tol)?;
    t.report("fannes", &r);
    Ok(())
}

fn yanagi(t: &mut Trial) -> Result<()> {
    let o = t.order;
    let rho = sample_density_any_rank(t.dim, &mut t.rng)?;
    let sigma = sample_nearby_density(&rho, &mut t.rng)?;
    t.inputs(|| pair_json(&rho, &sigma));
    let tol = t.tolerance;
    let r = t.eval.check_yanagi(&rho, &sigma, o, tol)?;
    t.report("yanagi", &r);
    let tau = trace_distance_quantum(&rho, &sigma)?.min(1.0);
    if let Some(y) = yanagi_comparison_bound(tau, t.dim, o)? {
        t.lower_tol("nonnegative", y, 0.0, 1e-12);
    }
    Ok(())
}

const ANY_DIM: Dims = Dims::Grid { min: 1, max: usize::MAX };
const DIM2: Dims = Dims::Grid { min: 2, max: usize::MAX };

/// Every registered property, in execution order.
pub static REGISTRY: &[Property] = &[
    Property { id: "alpha-log-identities", summary: "product and reciprocal rules of ln_α; α → 1 limit", covers: &["alpha_log"], orders: Orders::Grid(any_order), dims: Dims::Independent, run: alpha_log_identities },
    Property { id: "binary-tsallis-concavity", summary: "midpoint concavity and symmetry of h_α", covers: &["binary_tsallis"], orders: Orders::Grid(any_order), dims: Dims::Independent, run: binary_concavity },
    Property { id: "lemma1", summary: "Φ_uv ≤ 0 on α ∈ [0, ½]; fidelity bound √(1−t²)", covers: &["phi_uv", "g_of_t"], orders: Orders::Independent, dims: Dims::Independent, run: lemma1 },
    Property { id: "phi-convexity", summary: "Φ_uv is convex in α", covers: &["phi_uv"], orders: Orders::Independent, dims: Dims::Independent, run: phi_convexity },
    Property { id: "series-coefficients", summary: "Σ c_n t^{2n} = g(t), c_n > 0", covers: &["pinsker_series_coeff", "g_of_t"], orders: Orders::Independent, dims: Dims::Independent, run: series_coefficients },
    Property { id: "classical-trace-distance", summary: "metric axioms and best-event form", covers: &["trace_distance_classical"], orders: Orders::Independent, dims: ANY_DIM, run: classical_trace_distance },
    Property { id: "entropy-relations", summary: "Tsallis–Rényi relation and entropy ranges", covers: &["tsallis_entropy", "renyi_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: entropy_relations },
    Property { id: "homogeneity", summary: "H_α(λA‖λB) = λH_α(A‖B)", covers: &["tsallis_rel_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: homogeneity },
    Property { id: "joint-convexity", summary: "joint convexity of H_α on weight sets", covers: &["tsallis_rel_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: joint_convexity },
    Property { id: "shift-bound", summary: "H_α(A+C‖B+C) ≤ H_α(A‖B)", covers: &["tsallis_rel_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: shift_bound },
    Property { id: "qbar-reduction", summary: "Q̄ construction and the reduction H_α(P‖Q) ≤ H_α(Δ+Q̄‖Q̄)", covers: &["minimal_probability", "qbar_construction"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: qbar_reduction },
    Property { id: "classical-order-chain", summary: "H_α ≤ H_1 ≤ H_β for α < 1 < β ≤ 2", covers: &["tsallis_rel_entropy"], orders: Orders::Independent, dims: ANY_DIM, run: classical_order_chain },
    Property { id: "renyi-relative", summary: "Rényi/Tsallis relation, nonnegativity, R_α(P‖P) = 0", covers: &["renyi_rel_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: renyi_relative },
    Property { id: "f-divergence-generators", summary: "f-divergence reduces to D, KL and H_α", covers: &["f_divergence"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: f_divergence_generators },
    Property { id: "chain-rule", summary: "H_α(X,Y) = H_α(Y) + H_α(X|Y)", covers: &["joint_tsallis_entropy", "conditional_tsallis_entropy"], orders: Orders::Grid(any_order), dims: ANY_DIM, run: chain_rule },
    Property { id: "maximal-coupling", summary: "coupling marginals and P_e = D(P, Q)", covers: &["maximal_coupling", "error_probability"], orders: Orders::Independent, dims: ANY_DIM, run: coupling },
    Property { id: "spectral-reconstruction", summary: "Σ a P_a reproduces the operator", covers: &["eigendecompose"], orders: Orders::Independent, dims: ANY_DIM, run: spectral_reconstruction },
    Property { id: "power-composition", summary: "(A^s)^t = A^{st} on the support", covers: &["power_on_support"], orders: Orders::Independent, dims: ANY_DIM, run: power_composition },
    Property { id: "quantum-trace-distance", summary: "triangle inequality, unitary invariance, HS inner product", covers: &["trace_distance_quantum", "hs_inner"], orders: Orders::Independent, dims: ANY_DIM, run: quantum_trace_distance },
    Property { id: "pinching", summary: "pinching is idempotent, positive and trace preserving", covers: &["pinching_map"], orders: Orders::Independent, dims: ANY_DIM, run: pinching },
    Property { id: "jordan", summary: "Jordan projectors split X − Y by sign; coarse graining gives D", covers: &["jordan_projectors", "coarse_grain_two_point"], orders: Orders::Independent, dims: ANY_DIM, run: jordan },
    Property {
        id: "quantum-classical-consistency",
        summary: "quantum quantities equal classical ones on commuting pairs",
        covers: &["quantum_tsallis_entropy", "quantum_renyi_entropy", "quantum_relative_entropy", "quantum_tsallis_rel_entropy", "quantum_renyi_rel_entropy", "quantum_f_divergence"],
        orders: Orders::Grid(any_order),
        dims: ANY_DIM,
        run: classical_consistency,
    },
    Property { id: "pinching-monotonicity", summary: "S_α(Ψ(A)‖Ψ(B)) ≤ S_α(A‖B)", covers: &["pinching_map", "quantum_tsallis_rel_entropy"], orders: Orders::Grid(below_one), dims: ANY_DIM, run: pinching_monotonicity },
    Property { id: "theorem1-floor", summary: "quantum f_α-divergence ≥ two-point classical floor", covers: &["theorem1_classical_floor", "quantum_f_divergence_limit"], orders: Orders::Grid(below_one), dims: ANY_DIM, run: theorem1_floor },
    Property { id: "f-divergence-limit", summary: "ε-regularized limit equals the direct value on full-rank pairs", covers: &["quantum_f_divergence_limit", "quantum_f_divergence"], orders: Orders::Grid(off_one), dims: ANY_DIM, run: limit_matches_direct },
    Property { id: "quantum-pinsker-kl", summary: "H_1(ρ‖σ) ≥ 2D(ρ,σ)²", covers: &["quantum_relative_entropy"], orders: Orders::Independent, dims: ANY_DIM, run: quantum_pinsker_kl },
    Property { id: "quantum-order-chain", summary: "H_α ≤ H_1 ≤ H_β for α < 1 < β ≤ 2", covers: &["quantum_tsallis_rel_entropy", "quantum_relative_entropy"], orders: Orders::Independent, dims: ANY_DIM, run: quantum_order_chain },
    Property {
        id: "unitary-invariance",
        summary: "entropies and divergences are unitarily invariant",
        covers: &["quantum_tsallis_entropy", "quantum_renyi_entropy", "quantum_tsallis_rel_entropy", "quantum_renyi_rel_entropy", "quantum_relative_entropy"],
        orders: Orders::Grid(any_order),
        dims: ANY_DIM,
        run: unitary_invariance,
    },
    Property { id: "theorem2", summary: "H_α(A‖B) ≥ κ_α θ g(τ/θ) for equal-trace positive pairs", covers: &["pinsker_lower_bound", "kappa"], orders: Orders::Grid(below_one), dims: ANY_DIM, run: theorem2 },
    Property { id: "theorem2-binary", summary: "Pinsker bound and its partial sums on binary pairs", covers: &["pinsker_lower_bound", "pinsker_series_bound", "kappa"], orders: Orders::Grid(below_one), dims: Dims::Independent, run: theorem2_binary },
    Property { id: "series-dominance", summary: "partial sums increase towards the closed form", covers: &["pinsker_series_bound"], orders: Orders::Grid(below_one), dims: Dims::Independent, run: series_dominance },
    Property { id: "renyi-pinsker", summary: "R_α(ρ‖σ) ≥ Rényi Pinsker bound", covers: &["renyi_pinsker_bound"], orders: Orders::Grid(below_one), dims: ANY_DIM, run: renyi_pinsker },
    Property { id: "theorem3", summary: "H_α(P‖Q) ≤ minimal-probability bound", covers: &["upper_bound_thm3"], orders: Orders::Grid(above_one), dims: DIM2, run: theorem3 },
    Property { id: "theorem3-forms", summary: "closed and α-log forms agree; continuity at τ = q0", covers: &["upper_bound_thm3", "upper_bound_thm3_log_form"], orders: Orders::Grid(above_one), dims: Dims::Independent, run: theorem3_forms },
    Property { id: "theorem3-extremal", summary: "extremal pair attains the bound; grid oracle never exceeds it", covers: &["upper_bound_thm3"], orders: Orders::Grid(above_one), dims: Dims::Grid { min: 2, max: 6 }, run: theorem3_extremal },
    Property { id: "theorem4", summary: "H_α(X|Y) ≤ intermediate ≤ Fano bound", covers: &["fano_bound", "fano_intermediate"], orders: Orders::Grid(off_one), dims: DIM2, run: theorem4 },
    Property { id: "bound-monotonicity", summary: "Fano and Fannes bounds nondecreasing for α > 1", covers: &["fano_bound", "fannes_bound"], orders: Orders::Grid(above_one), dims: DIM2, run: bound_monotonicity },
    Property { id: "theorem5", summary: "|H_α(ρ) − H_α(σ)| ≤ Fannes bound within its range", covers: &["fannes_bound"], orders: Orders::Grid(any_order), dims: DIM2, run: theorem5 },
    Property { id: "yanagi", summary: "entropy difference below the earlier comparison bound", covers: &["yanagi_comparison_bound"], orders: Orders::Grid(below_one), dims: ANY_DIM, run: yanagi },
];

/// Looks a property up by id.
pub fn property(id: &str) -> Option<&'static Property> {
    REGISTRY.iter().find(|p| p.id == id)
}
