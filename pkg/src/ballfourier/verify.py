"""Identity-verification suites producing VerificationReport records.

Each suite machine-checks one family of identities at desk scale and returns
a canonically ordered list of reports (sorted by identity name, then by the
JSON encoding of the parameters), so output files are byte-stable across
runs.  Random parameter sweeps draw from SplitMix64, a documented 64-bit
generator, making sweeps reproducible from the seed alone.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import math

import numpy as np

from . import quadrature as quad
from .ball import ball_norm, ball_operator_residual, tail_sum
from .classical import gegenbauer, gegenbauer_norm, hahn_orthogonality_constant
from .dfamily import d_orthogonality_constant
from .hypergeometric import pfq_diagnostics
from .quadrature import VerificationReport, make_report
from .special import gamma, log_beta
from .tanh_family import (FamilyParams, _theta_pieces, fourier_closed_form,
                          fourier_prefactor, fourier_via_recursion,
                          theta_factor_hahn, theta_hyp_spec)

__all__ = ["SplitMix64", "SUITE_NAMES", "run_suite", "report_to_dict",
           "report_from_dict", "reports_to_json", "reports_from_json",
           "canonical_sort"]

# result magnitude below this fraction of the peak partial sum marks a
# cancellation-risky series value
_LOW_CONFIDENCE_RATIO = 1e-10


def _gated_report(name, parameters, coarse, fine, target, tolerance,
                  abs_floor=0.0, low_confidence=False):
    """Report with the node-doubling stability gate applied first: the
    verdict is issued on the base-resolution value only if doubling the rule
    moves it by less than the verdict tolerance; otherwise the report fails
    and is flagged low-confidence."""
    coarse = complex(coarse)
    fine = complex(fine)
    drift = abs(coarse - fine)
    stable = drift <= max(tolerance * max(abs(coarse), abs(fine)), abs_floor)
    report = make_report(name, parameters, coarse, target, tolerance,
                         abs_floor=abs_floor,
                         low_confidence=low_confidence or not stable)
    if not stable:
        report = dataclasses.replace(report, passed=False)
    return report


class SplitMix64:
    """SplitMix64: x += 0x9E3779B97F4A7C15; z = x; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
    z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31 (all mod 2^64)."""

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self._state = seed & self._MASK

    def next_raw(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * (self.next_raw() / 2.0 ** 64)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.next_raw() % (hi - lo + 1)


def _multi_indices(r: int, max_total: int):
    """All multi-indices of length r with total degree <= max_total."""
    out = []
    for total in range(max_total + 1):
        for combo in itertools.combinations_with_replacement(range(r), total):
            counts = [0] * r
            for c in combo:
                counts[c] += 1
            out.append(tuple(counts))
    return sorted(set(out))


def _random_multi_index(rng: SplitMix64, r: int, max_total: int) -> tuple[int, ...]:
    n = [0] * r
    for _ in range(rng.integer(0, max_total)):
        n[rng.integer(0, r - 1)] += 1
    return tuple(n)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _suite_gegenbauer_ort(seed: int, r_max: int, tolerance: float | None):
    tol = tolerance if tolerance is not None else 1e-10
    reports = []
    for lam in (0.3, 1.0, 2.5):
        rules = [quad._jacgauss_cached(k, lam - 0.5, lam - 0.5) for k in (200, 400)]
        values = [[gegenbauer(k, lam, nodes) for k in range(7)] for nodes, _ in rules]
        for n in range(7):
            for m in range(n, 7):
                coarse, fine = (float(np.sum(w * vals[n] * vals[m]))
                                for (_, w), vals in zip(rules, values))
                target = gegenbauer_norm(n, lam) if n == m else 0.0
                floor = 0.0 if n == m else 1e-10 * gegenbauer_norm(n, lam)
                reports.append(_gated_report(
                    "gegenbauer-ort", {"lambda": lam, "n": n, "m": m},
                    coarse, fine, target, tol, abs_floor=floor))
    return reports


def _suite_ball_ort(seed: int, r_max: int, tolerance: float | None):
    tol = tolerance if tolerance is not None else 1e-8
    reports = []
    for mu in (0.5, 1.5):
        indices = _multi_indices(2, 3)
        spec = quad.ball_default_spec(2)
        gram = quad.ball_gram_matrix(indices, mu, spec)
        gram_fine = quad.ball_gram_matrix(indices, mu, quad.doubled_spec(spec))
        for p, n in enumerate(indices):
            for q in range(p, len(indices)):
                m = indices[q]
                target = ball_norm(n, mu) if n == m else 0.0
                floor = (0.0 if n == m
                         else 1e-8 * math.sqrt(ball_norm(n, mu) * ball_norm(m, mu)))
                reports.append(_gated_report(
                    "ball-ort", {"r": 2, "mu": mu, "n": list(n), "m": list(m)},
                    gram[p, q], gram_fine[p, q], target, tol, abs_floor=floor))
    if r_max >= 3:
        spec = quad.ball_default_spec(3)
        for n, m in (((0, 0, 0), (0, 0, 0)), ((1, 0, 1), (1, 0, 1)),
                     ((2, 0, 0), (0, 0, 2)), ((0, 1, 1), (0, 1, 1))):
            mu = 0.5
            value = quad.ball_inner_product_numeric(n, m, mu, spec)
            fine = quad.ball_inner_product_numeric(n, m, mu, quad.doubled_spec(spec))
            target = ball_norm(n, mu) if n == m else 0.0
            floor = 0.0 if n == m else 1e-6 * math.sqrt(ball_norm(n, mu) * ball_norm(m, mu))
            reports.append(_gated_report(
                "ball-ort", {"r": 3, "mu": mu, "n": list(n), "m": list(m)},
                value, fine, target, tolerance if tolerance is not None else 1e-6,
                abs_floor=floor))
    return reports


def _slope(hs, residuals):
    logs_h = np.log(np.asarray(hs))
    logs_r = np.log(np.asarray(residuals))
    slope, _ = np.polyfit(logs_h, logs_r, 1)
    return float(slope)


def _suite_ball_pde(seed: int, r_max: int, tolerance: float | None):
    tol = tolerance if tolerance is not None else 0.2
    rng = SplitMix64(seed)
    hs = (1e-2, 5e-3, 2.5e-3)
    reports = []
    cases = 0
    while cases < 10:
        r = rng.integer(1, min(3, r_max))
        n = _random_multi_index(rng, r, 3)
        if max(n) < 2:
            # multilinear members are differentiated exactly by the stencils;
            # no h^2 truncation term to measure a slope from
            continue
        mu = rng.uniform(0.3, 1.8)
        point = np.array([rng.uniform(-0.4, 0.4) for _ in range(r)])
        if np.linalg.norm(point) > 0.55:
            continue
        residuals = [ball_operator_residual(n, mu, point, h) for h in hs]
        if residuals[0] < 1e-8:
            # degenerate low-degree case: finite differences are exact
            reports.append(make_report(
                "ball-pde", {"r": r, "n": list(n), "mu": mu, "point": list(point),
                             "quantity": "residual"},
                residuals[0], 0.0, 1.0, abs_floor=1e-8))
        else:
            slope = _slope(hs, residuals)
            reports.append(make_report(
                "ball-pde", {"r": r, "n": list(n), "mu": mu, "point": list(point),
                             "quantity": "richardson-slope"},
                slope, 2.0, tol / 2.0, abs_floor=tol))
        cases += 1
    return reports


def _theta_low_confidence(params: FamilyParams, xi) -> bool:
    for j in range(1, params.r + 1):
        value, peak = pfq_diagnostics(theta_hyp_spec(j, params.r, params, float(xi[j - 1])))
        if abs(value) < _LOW_CONFIDENCE_RATIO * peak:
            return True
    return False


def fourier_value_scale(params: FamilyParams, xi) -> float:
    """Natural magnitude scale of the closed-form transform at ``xi``.

    The series inside each theta factor can sit near a polynomial zero, in
    which case path-equivalence comparisons are meaningful in absolute terms
    against this scale (prefactor times beta magnitudes times the peak
    partial sums), not in relative terms against the suppressed value.
    """
    scale = float(fourier_prefactor(params))
    for j in range(1, params.r + 1):
        _, _, arg_plus, arg_minus, _, _, _ = _theta_pieces(
            j, params.r, params, float(xi[j - 1]))
        _, peak = pfq_diagnostics(theta_hyp_spec(j, params.r, params, float(xi[j - 1])))
        scale *= abs(np.exp(log_beta(arg_plus, arg_minus))) * peak
    return scale


def _random_family_params(rng: SplitMix64, r: int, max_total: int) -> FamilyParams:
    a = rng.uniform(0.3, 2.0)
    mu = rng.uniform(-0.4, 2.0)
    if abs(mu) < 0.05:
        mu = 0.35
    return FamilyParams(a, mu, _random_multi_index(rng, r, max_total))


def _suite_fourier_paths(seed: int, r_max: int, tolerance: float | None, draws: int = 120):
    tol = tolerance if tolerance is not None else 1e-11
    rng = SplitMix64(seed)
    reports = []
    for _ in range(draws):
        r = rng.integer(1, min(3, r_max))
        params = _random_family_params(rng, r, 4)
        xi = np.array([rng.uniform(-3.0, 3.0) for _ in range(r)])
        closed = fourier_closed_form(params, xi)
        low_conf = _theta_low_confidence(params, xi)
        f1 = fourier_via_recursion(params, xi, "peel_first")
        f2 = fourier_via_recursion(params, xi, "peel_last")
        hahn = complex(fourier_prefactor(params))
        for j in range(1, r + 1):
            hahn *= theta_factor_hahn(j, r, params, float(xi[j - 1]))
        scale = fourier_value_scale(params, xi)
        base = {"r": r, "n": list(params.n), "a": params.a, "mu": params.mu,
                "xi": [float(v) for v in xi]}
        for label, other in (("peel-first", f1), ("peel-last", f2), ("hahn-form", hahn)):
            reports.append(make_report(
                "fourier-paths", {**base, "path": label}, closed, other, tol,
                abs_floor=tol * scale, low_confidence=low_conf))
    return reports


_FOURIER_GRID_XI = {1: (-3.0, -1.0, 0.0, 0.5, 2.0, 3.0),
                    2: (-3.0, 0.5, 2.0),
                    3: (-3.0, 2.0)}


def _suite_fourier_oracle(seed: int, r_max: int, tolerance: float | None,
                          max_total: int = 4, quick: bool = False):
    tol = tolerance if tolerance is not None else 1e-6
    reports = []
    a_values = (0.5, 1.0, 1.75)
    mu_values = (0.5, 1.25)
    for r in range(1, min(3, r_max) + 1):
        spec = quad.default_spec(r)
        fine_spec = quad.doubled_spec(spec)
        xi_axis = _FOURIER_GRID_XI[r]
        indices = _multi_indices(r, 2 if quick else max_total)
        if quick:
            indices = indices[: 4]
        for n in indices:
            for a in a_values[:2] if quick else a_values:
                for mu in mu_values[:1] if quick else mu_values:
                    params = FamilyParams(a, mu, n)
                    axis_cache, fine_cache = {}, {}
                    for j in range(1, r + 1):
                        axis_cache[j] = {x: quad._fourier_axis_integral(j, params, x, spec)
                                         for x in xi_axis}
                        fine_cache[j] = {x: quad._fourier_axis_integral(j, params, x, fine_spec)
                                         for x in xi_axis}
                    for xi in itertools.product(xi_axis, repeat=r):
                        oracle = 1.0 + 0.0j
                        fine = 1.0 + 0.0j
                        for j in range(1, r + 1):
                            oracle *= axis_cache[j][xi[j - 1]]
                            fine *= fine_cache[j][xi[j - 1]]
                        closed = fourier_closed_form(params, np.array(xi))
                        drift = abs(oracle - fine)
                        stable = drift <= max(tol * max(abs(oracle), abs(fine)), 1e-9)
                        report = make_report(
                            "fourier-oracle",
                            {"r": r, "n": list(n), "a": a, "mu": mu, "xi": list(xi)},
                            closed, oracle, tol, abs_floor=1e-9,
                            low_confidence=not stable)
                        if not stable:
                            report = dataclasses.replace(report, passed=False)
                        reports.append(report)
    return reports


def _suite_hahn_ort(seed: int, r_max: int, tolerance: float | None):
    tol = tolerance if tolerance is not None else 1e-6
    spec = quad.QuadratureSpec(nodes_per_axis=768, truncation_halfwidth=12.0, panels=48)
    reports = []
    for a1, a2 in ((0.5, 0.5), (1.0, 0.75)):
        for n in range(5):
            for m in range(n, 5):
                value = quad.hahn_orthogonality_integral(n, m, a1, a2, spec)
                fine = quad.hahn_orthogonality_integral(n, m, a1, a2,
                                                        quad.doubled_spec(spec))
                target = hahn_orthogonality_constant(n, a1, a2) if n == m else 0.0
                floor = (0.0 if n == m else
                         1e-6 * math.sqrt(hahn_orthogonality_constant(n, a1, a2)
                                          * hahn_orthogonality_constant(m, a1, a2)))
                reports.append(_gated_report(
                    "hahn-ort", {"a1": a1, "a2": a2, "n": n, "m": m},
                    value, fine, target, tol, abs_floor=floor))
    return reports


def _transform_pair_constant(params: FamilyParams) -> float:
    """Constant K with F(member) = K * (gamma-pair family member at i xi):
    the closed-form prefactor divided by the beta denominators."""
    value = fourier_prefactor(params)
    r = params.r
    for j in range(1, r + 1):
        value /= gamma(2.0 * params.a + tail_sum(params.n, j + 1) + (r - j) / 2.0)
    return float(value)


def _parseval_case(n, m, a1, a2, tol, floor):
    spec = quad.default_spec(len(n))
    fine_spec = quad.doubled_spec(spec)
    mu = a1 + a2 - 0.5
    lhs = (2.0 * math.pi) ** len(n) * quad._parseval_x_side(n, m, a1, a2, mu, spec)
    lhs_fine = (2.0 * math.pi) ** len(n) * quad._parseval_x_side(n, m, a1, a2, mu, fine_spec)
    rhs = quad._parseval_xi_side(n, m, a1, a2, mu, spec)
    rhs_fine = quad._parseval_xi_side(n, m, a1, a2, mu, fine_spec)
    base = {"r": len(n), "n": list(n), "m": list(m), "a1": a1, "a2": a2}
    stable = (abs(lhs - lhs_fine) <= max(tol * abs(lhs), floor)
              and abs(rhs - rhs_fine) <= max(tol * abs(rhs), floor))
    report = make_report("parseval", base, lhs, rhs, tol, abs_floor=floor,
                         low_confidence=not stable)
    if not stable:
        report = dataclasses.replace(report, passed=False)
    out = [report]
    target = quad.parseval_ball_value(n, m, a1, a2)
    out.append(make_report("parseval-ball-value", base, lhs, target, tol,
                           abs_floor=floor))
    # the xi-side, rescaled by the transform constants, is the pairing of the
    # gamma-pair family; compare it with the closed-form pairing constant
    k_n = _transform_pair_constant(FamilyParams(a1, a1 + a2 - 0.5, n))
    k_m = _transform_pair_constant(FamilyParams(a2, a1 + a2 - 0.5, m))
    pair_target = d_orthogonality_constant(n, a1, a2) if n == m else 0.0
    out.append(make_report("parseval-pair-constant", base,
                           complex(rhs) / (k_n * k_m), pair_target, tol,
                           abs_floor=floor * 4.0 * math.pi / abs(k_n * k_m)))
    return out


def _suite_parseval(seed: int, r_max: int, tolerance: float | None):
    reports = []
    cases_r1 = (((0,), (0,), 0.5, 0.5), ((1,), (0,), 0.5, 0.5), ((1,), (1,), 1.0, 0.75),
                ((3,), (3,), 0.5, 0.5), ((2,), (0,), 1.0, 0.75))
    for n, m, a1, a2 in cases_r1:
        tol = tolerance if tolerance is not None else 1e-8
        reports.extend(_parseval_case(n, m, a1, a2, tol, 1e-8))
    if r_max >= 2:
        cases_r2 = (((0, 0), (0, 0), 0.5, 0.5), ((1, 0), (1, 0), 1.0, 0.5),
                    ((1, 0), (0, 1), 1.0, 0.5), ((1, 1), (1, 1), 1.0, 0.75))
        for n, m, a1, a2 in cases_r2:
            tol = tolerance if tolerance is not None else 1e-6
            reports.extend(_parseval_case(n, m, a1, a2, tol, 1e-6))
    return reports


def _dfamily_pair_report(n, m, a1, a2, tolerance):
    spec = quad._d_pair_spec(a1, a2)
    value = quad.d_biorthogonality_integral(n, m, a1, a2, spec)
    fine = quad.d_biorthogonality_integral(n, m, a1, a2, quad.doubled_spec(spec))
    target = d_orthogonality_constant(n, a1, a2) if n == m else 0.0
    tol = tolerance if tolerance is not None else 1e-4
    floor = (0.0 if n == m else
             1e-5 * math.sqrt(d_orthogonality_constant(n, a1, a2)
                              * d_orthogonality_constant(m, a1, a2)))
    return _gated_report(
        "dfamily-ort", {"r": len(n), "a1": a1, "a2": a2, "n": list(n), "m": list(m)},
        value, fine, target, tol, abs_floor=floor)


def _suite_dfamily_ort(seed: int, r_max: int, tolerance: float | None):
    reports = []
    for a1, a2 in ((0.5, 0.5), (1.0, 0.75)):
        indices = [(n,) for n in range(4)]
        for n in indices:
            for m in indices:
                if m < n:
                    continue
                reports.append(_dfamily_pair_report(n, m, a1, a2, tolerance))
    if r_max >= 2:
        indices = _multi_indices(2, 2)
        for n in indices:
            for m in indices:
                if m < n:
                    continue
                reports.append(_dfamily_pair_report(n, m, 1.0, 0.75, tolerance))
    return reports


_SUITES = {
    "gegenbauer-ort": _suite_gegenbauer_ort,
    "ball-ort": _suite_ball_ort,
    "ball-pde": _suite_ball_pde,
    "fourier-paths": _suite_fourier_paths,
    "fourier-oracle": _suite_fourier_oracle,
    "hahn-ort": _suite_hahn_ort,
    "parseval": _suite_parseval,
    "dfamily-ort": _suite_dfamily_ort,
}

SUITE_NAMES = tuple(_SUITES) + ("all",)


def canonical_sort(reports):
    """Canonical report order: identity name, then JSON-encoded parameters."""
    return sorted(reports, key=lambda rep: (rep.identity_name,
                                            json.dumps(rep.parameters, sort_keys=True)))


def run_suite(name: str, seed: int = 0, r_max: int = 3,
              tolerance: float | None = None, quick: bool = False):
    """Run one named suite (or 'all') and return canonically sorted reports."""
    if name == "all":
        reports = []
        for suite_name, runner in _SUITES.items():
            if suite_name == "fourier-oracle":
                reports.extend(runner(seed, r_max, tolerance, quick=quick))
            else:
                reports.extend(runner(seed, r_max, tolerance))
        return canonical_sort(reports)
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    if name == "fourier-oracle":
        return canonical_sort(_SUITES[name](seed, r_max, tolerance, quick=quick))
    return canonical_sort(_SUITES[name](seed, r_max, tolerance))


# ---------------------------------------------------------------------------
# serialization (exact JSON schema used by the CLI)
# ---------------------------------------------------------------------------

def report_to_dict(report: VerificationReport) -> dict:
    return {
        "identity_name": report.identity_name,
        "parameters": report.parameters,
        "lhs_re": report.lhs.real,
        "lhs_im": report.lhs.imag,
        "rhs_re": report.rhs.real,
        "rhs_im": report.rhs.imag,
        "abs_error": report.abs_error,
        "rel_error": report.rel_error,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "low_confidence": report.low_confidence,
    }


def report_from_dict(data: dict) -> VerificationReport:
    return VerificationReport(
        identity_name=data["identity_name"],
        parameters=data["parameters"],
        lhs=complex(data["lhs_re"], data["lhs_im"]),
        rhs=complex(data["rhs_re"], data["rhs_im"]),
        abs_error=data["abs_error"],
        rel_error=data["rel_error"],
        tolerance=data["tolerance"],
        passed=data["passed"],
        low_confidence=data["low_confidence"],
    )


def reports_to_json(reports) -> str:
    return json.dumps([report_to_dict(rep) for rep in reports], indent=2,
                      sort_keys=False)


def reports_from_json(text: str):
    return [report_from_dict(item) for item in json.loads(text)]
