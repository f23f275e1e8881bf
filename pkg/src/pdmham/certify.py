"""The superintegrability certifier.

Assembles per-family numerical evidence into a machine-readable
Certificate: bracket conservation for every bound integral, the commuting
pair where one is claimed, functional-independence ranks, the
Killing-tensor condition on quadratic momentum parts, structural
identities, complex evolution laws, a negative-control corruption probe,
and one trajectory drift check.

Every residual is deterministic given (params, sample seed, integrator
config).  Serialization: top-level JSON fields `family`, `n`, `couplings`,
`checks` (array of {name, max_residual, tolerance, pass}, plus `note`
where a check was skipped or needs reading guidance), `verdict`.
"""

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .brackets import (BRACKET_TOL, bracket_scale, gradient, poisson_bracket,
                       scaled_residual)
from .dynamics import IntegratorConfig, drift_report, integrate
from .errors import EmptyTrajectory, NoQuadraticIntegral, UnknownIntegral
from .families import hamiltonian
from .observables import (a_components, family_integrals, family_observables,
                          integral, lambda_factor, m_components, n_components)
from .phase import DomainBox, sample_points

# paired integrals whose mutual independence carries each family's claim
CLAIMED_TRIPLES = {
    "geodesic": ("P1", "P2", "Pphi"),
    "na_central": ("J1", "J11", "J22"),
    "na": ("Ja1", "Ja2", "Ja3"),
    "na_prime": ("Ja3p", "J2", "J3"),
    "nb": ("Jb1", "Jb2", "Jb3"),
    "nc": ("J1", "J2", "J3"),
    "nc1": ("Jc2", "Jc3", "H"),
    "nc2": ("Jc2", "Jc3", "H"),
    "nd": ("Jd2", "Jd3", "H"),
}

RANK_REL_THRESHOLD = 1e-8
CORRUPTION_FACTOR = 0.1


@dataclass(frozen=True)
class SampleConfig:
    count: int = 200
    box: DomainBox = DomainBox()
    bracket_tol: float = BRACKET_TOL
    identity_tol: float = 1e-12
    evolution_tol: float = 1e-10
    independence_fraction: float = 0.95
    drift_tol: float = 1e-6
    control_floor: float = 1e-3

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sample count must be >= 1")


@dataclass(frozen=True)
class ResidualStats:
    max_residual: float
    mean_residual: float


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: object     # float, or None when skipped
    tolerance: object
    passed: object           # bool, or None when skipped
    note: str = ""

    def __post_init__(self):
        # numpy scalars (bool_, float64) must not leak out of the checks:
        # they break `is True` identity tests and json.dumps alike
        if self.max_residual is not None:
            object.__setattr__(self, "max_residual", float(self.max_residual))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        if self.passed is not None:
            object.__setattr__(self, "passed", bool(self.passed))

    def as_dict(self):
        d = {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class Certificate:
    params: object
    checks: tuple
    involution_stats: dict
    independence_fraction: float
    rank_failures: tuple
    verdict: str

    @property
    def family(self):
        return self.params.family

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self):
        return {
            "family": self.params.family,
            "n": self.params.n,
            "couplings": {"k0": self.params.k0, "k1": self.params.k1,
                          "k2": self.params.k2},
            "checks": [c.as_dict() for c in self.checks],
            "verdict": self.verdict,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def _points(params, sample):
    return sample_points(params, sample.box, sample.count)


def bracket_residual_suite(params, sample, points=None, corrupt=None):
    """Per-integral max/mean scaled |{J, H}| over the sample.

    `corrupt` names one integral to replace by its +10% corrupted version,
    demonstrating end to end that the harness turns the verdict.
    """
    points = points if points is not None else _points(params, sample)
    if corrupt is not None and corrupt not in family_integrals(params.family):
        raise UnknownIntegral(
            f"{params.family} does not bind {corrupt!r}")
    out = {}
    for obs in family_observables(params.family):
        fn = obs
        if obs.name == corrupt:
            fn = corrupted(obs, params, points[:8])
            if fn is None:
                raise ValueError(
                    f"corruption of single-term integral {obs.name} is inert")
        residuals = [scaled_residual(fn, hamiltonian, params, pt)
                     for pt in points]
        out[obs.name] = ResidualStats(max(residuals),
                                      sum(residuals) / len(residuals))
    return out


def involution_check(params, pairs=None, sample=None, points=None):
    """Scaled |{A, B}| for each named pair of bound integrals.

    Only the pair a family actually claims to commute should be asserted
    small; the other pairwise values are generically nonzero and are
    reported as found.
    """
    if points is None:
        points = _points(params, sample or SampleConfig())
    if pairs is None:
        names = [n for n in CLAIMED_TRIPLES[params.family] if n != "H"]
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    out = {}
    for name_a, name_b in pairs:
        obs_a = integral(params.family, name_a)
        obs_b = integral(params.family, name_b)
        out[f"{name_a},{name_b}"] = max(
            scaled_residual(obs_a, obs_b, params, pt) for pt in points)
    return out


def independence_rank(functions, params, point):
    """Numerical rank of the stacked phase-gradients and the singular values.

    Rank counts singular values above RANK_REL_THRESHOLD times the largest,
    the relative cut that keeps integrals of very different magnitude
    comparable.
    """
    if not 2 <= len(functions) <= 4:
        raise ValueError("rank check takes 2 to 4 functions")
    rows = []
    for fn in functions:
        g = gradient(fn, params, point)
        rows.append((g.dF_dr, g.dF_dphi, g.dF_dpr, g.dF_dpphi))
    sv = np.linalg.svd(np.asarray(rows), compute_uv=False)
    if sv[0] == 0.0:
        return 0, sv
    return int(np.sum(sv > RANK_REL_THRESHOLD * sv[0])), sv


def independence_stats(params, sample, names=None, points=None):
    """Fraction of sampled points where the claimed triple has full rank.

    Returns (fraction, failures); each failure carries the point and its
    singular values for inspection.
    """
    points = points if points is not None else _points(params, sample)
    names = names or CLAIMED_TRIPLES[params.family]
    functions = [integral(params.family, name) for name in names]
    failures = []
    hits = 0
    for pt in points:
        rank, sv = independence_rank(functions, params, pt)
        if rank == len(functions):
            hits += 1
        else:
            failures.append((pt, tuple(float(s) for s in sv)))
    return hits / len(points), tuple(failures)


def killing_tensor_check(params, sample, points=None):
    """Max scaled |{K, T}| over quadratic-integral momentum parts.

    K is an integral with its couplings zeroed; what remains is the
    quadratic momentum form whose symmetric tensor must satisfy the
    Killing condition against the kinetic flow.
    """
    quadratics = [obs for obs in family_observables(params.family)
                  if obs.degree == 2]
    if not quadratics:
        raise NoQuadraticIntegral(
            f"{params.family} binds no quadratic integral")
    points = points if points is not None else _points(params, sample)
    zeroed = replace(params, k0=0.0, k1=0.0, k2=0.0)
    worst = 0.0
    for obs in quadratics:
        def kpart(_params, r, phi, p_r, p_phi, _obs=obs):
            return _obs(zeroed, r, phi, p_r, p_phi)

        worst = max(worst,
                    max(scaled_residual(kpart, hamiltonian, zeroed, pt)
                        for pt in points))
    return worst


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def identity_suite(params, sample, points=None):
    """Structural identities, pointwise, relative to max(1, |LHS|, |RHS|)."""
    points = points if points is not None else _points(params, sample)
    family = params.family
    out = {}

    def record(name, fn):
        out[name] = max(fn(pt) for pt in points)

    def kinetic_noether(pt):
        r, phi, p_r, p_phi = pt.as_tuple()
        t_val = integral(family, "T")(params, r, phi, p_r, p_phi)
        p1 = integral("geodesic", "P1")(params, r, phi, p_r, p_phi)
        p2 = integral("geodesic", "P2")(params, r, phi, p_r, p_phi)
        return _rel(t_val, 0.5 * (p1 * p1 + p2 * p2))

    record("kinetic_noether", kinetic_noether)

    if family == "na_central":
        j11 = integral(family, "J11")
        j22 = integral(family, "J22")

        def sum_rule(pt):
            args = (params,) + pt.as_tuple()
            return _rel(hamiltonian(*args),
                        0.5 * (j11(*args) + j22(*args)))

        record("sum_rule_h", sum_rule)

    if family == "na_prime":
        ja1p = integral(family, "Ja1p")
        ja2p = integral(family, "Ja2p")
        j2 = integral(family, "J2")
        j3 = integral(family, "J3")
        m1, m2 = m_components
        n1, n2 = n_components("double")

        def sum_rule(pt):
            args = (params,) + pt.as_tuple()
            return _rel(2.0 * hamiltonian(*args), ja1p(*args) + ja2p(*args))

        def reconstruct(pt):
            # M N* = (M1 N1 + M2 N2) + i (M2 N1 - M1 N2); its real part
            # reproduces J2 and its imaginary part reproduces -J3
            args = (params,) + pt.as_tuple()
            mv1, mv2 = m1(*args), m2(*args)
            nv1, nv2 = n1(*args), n2(*args)
            re = _rel(mv1 * nv1 + mv2 * nv2, j2(*args))
            im = _rel(mv2 * nv1 - mv1 * nv2, -j3(*args))
            return max(re, im)

        def unit_modulus(pt):
            args = (params,) + pt.as_tuple()
            nv1, nv2 = n1(*args), n2(*args)
            return _rel(nv1 * nv1 + nv2 * nv2, 1.0)

        record("sum_rule_h", sum_rule)
        record("mn_reconstruct", reconstruct)
        record("n_unit_modulus", unit_modulus)

    if family == "nd":
        jd2 = integral(family, "Jd2")
        jd3 = integral(family, "Jd3")
        a1, a2 = a_components
        n1, n2 = n_components("single")

        def reconstruct(pt):
            # A N = (A1 N1 - A2 N2) + i (A1 N2 + A2 N1); -Re gives Jd2 and
            # +Im gives Jd3
            args = (params,) + pt.as_tuple()
            av1, av2 = a1(*args), a2(*args)
            nv1, nv2 = n1(*args), n2(*args)
            re = _rel(-(av1 * nv1 - av2 * nv2), jd2(*args))
            im = _rel(av1 * nv2 + av2 * nv1, jd3(*args))
            return max(re, im)

        def modulus(pt):
            args = (params,) + pt.as_tuple()
            av1, av2 = a1(*args), a2(*args)
            return _rel(av1 * av1 + av2 * av2,
                        jd2(*args) ** 2 + jd3(*args) ** 2)

        record("an_reconstruct", reconstruct)
        record("a_modulus", modulus)

    return out


def algebra_check(params, sample, points=None):
    """The closed bracket relations among the third integral and the
    Runge-Lenz pair of the single-angle oscillator family."""
    if params.family != "na_prime":
        raise ValueError("algebra relations are bound to na_prime")
    points = points if points is not None else _points(params, sample)
    n = params.n
    k0, k1, k2 = params.k0, params.k1, params.k2
    ja3p = integral("na_prime", "Ja3p")
    j2 = integral("na_prime", "J2")
    j3 = integral("na_prime", "J3")
    out = {"bracket_j2": 0.0, "bracket_j3": 0.0}
    for pt in points:
        args = (params,) + pt.as_tuple()
        b2 = poisson_bracket(ja3p, j2, params, pt)
        rhs2 = 4.0 * (n - 1.0) * (k0 * j3(*args) + k1 * k2)
        scale2 = bracket_scale(ja3p(*args), j2(*args), pt)
        out["bracket_j2"] = max(out["bracket_j2"], abs(b2 - rhs2) / scale2)

        b3 = poisson_bracket(ja3p, j3, params, pt)
        rhs3 = -2.0 * (n - 1.0) * (2.0 * k0 * j2(*args) + k1 * k1 - k2 * k2)
        scale3 = bracket_scale(ja3p(*args), j3(*args), pt)
        out["bracket_j3"] = max(out["bracket_j3"], abs(b3 - rhs3) / scale3)
    return out


def evolution_law_check(params, sample, points=None):
    """Complex evolution laws of the factor functions against H.

    na_prime: {M, H} = 2 i lam M and {N, H} = 2 i lam N with the
    (n-1)-inclusive lam convention; nd: {A, H} = -i (n-1) lam A and
    {N, H} = +i (n-1) lam N with lam = r^{2(n-1)} p_phi, plus conservation
    of both real components of the product A N.
    """
    family = params.family
    if family not in ("na_prime", "nd"):
        raise ValueError("evolution laws are bound to na_prime and nd")
    points = points if points is not None else _points(params, sample)

    if family == "na_prime":
        z1, z2 = m_components
        n1, n2 = n_components("double")
        pairs = (("m", z1, z2), ("n", n1, n2))
        section, outer = "s61", 2.0
    else:
        z1, z2 = a_components
        n1, n2 = n_components("single")
        pairs = (("a", z1, z2), ("n", n1, n2))
        section, outer = "s62", params.n - 1.0

    out = {}
    for label, re_fn, im_fn in pairs:
        # {Z,H} = i c Z componentwise: {Re,H} = -c Im, {Im,H} = +c Re;
        # the single-angle A factor instead obeys {A,H} = -i c A
        sign = -1.0 if (family == "nd" and label == "a") else 1.0
        worst = 0.0
        for pt in points:
            args = (params,) + pt.as_tuple()
            c = sign * outer * lambda_factor(section, params.n, pt)
            zr, zi = re_fn(*args), im_fn(*args)
            h_val = hamiltonian(*args)
            scale = bracket_scale(math.hypot(zr, zi), h_val, pt)
            res_r = abs(poisson_bracket(re_fn, hamiltonian, params, pt)
                        + c * zi)
            res_i = abs(poisson_bracket(im_fn, hamiltonian, params, pt)
                        - c * zr)
            worst = max(worst, max(res_r, res_i) / scale)
        out[f"{label}_law"] = worst

    if family == "nd":
        def prod_re(p, r, phi, p_r, p_phi):
            return (z1(p, r, phi, p_r, p_phi) * n1(p, r, phi, p_r, p_phi)
                    - z2(p, r, phi, p_r, p_phi) * n2(p, r, phi, p_r, p_phi))

        def prod_im(p, r, phi, p_r, p_phi):
            return (z1(p, r, phi, p_r, p_phi) * n2(p, r, phi, p_r, p_phi)
                    + z2(p, r, phi, p_r, p_phi) * n1(p, r, phi, p_r, p_phi))

        out["product_conserved"] = max(
            max(scaled_residual(prod_re, hamiltonian, params, pt),
                scaled_residual(prod_im, hamiltonian, params, pt))
            for pt in points)
    return out


def corrupted(obs, params, probe_points):
    """A +10% single-part corruption of an integral, or None when inert.

    The corruption scales one group of same-coefficient terms by 1.1:
    preferentially the couplings-zeroed momentum part; for integrals that
    are pure momentum polynomials, the p_phi-free part.  A single-term
    integral admits no symmetry-breaking corruption (scaling a conserved
    quantity keeps it conserved), so None marks it inert.
    """
    zeroed = replace(params, k0=0.0, k1=0.0, k2=0.0)

    def mom_part(_params, r, phi, p_r, p_phi):
        return obs(zeroed, r, phi, p_r, p_phi)

    def radial_part(_params, r, phi, p_r, p_phi):
        return obs(params, r, phi, p_r, 0.0)

    def spread(part):
        full = [obs(params, *pt.as_tuple()) for pt in probe_points]
        sub = [part(params, *pt.as_tuple()) for pt in probe_points]
        nonzero = max(abs(v) for v in sub)
        differs = max(abs(f - s) for f, s in zip(full, sub))
        return nonzero > 1e-9 and differs > 1e-9

    part = None
    if spread(mom_part):
        part = mom_part
    elif spread(radial_part):
        part = radial_part
    if part is None:
        return None

    def corrupt(p, r, phi, p_r, p_phi):
        return obs(p, r, phi, p_r, p_phi) + CORRUPTION_FACTOR * part(
            p, r, phi, p_r, p_phi)

    return corrupt


def corruption_suite(params, sample, points=None):
    """Max scaled residual of each corrupted integral; the harness is
    sensitive when every non-inert corruption lands well above tolerance."""
    points = points if points is not None else _points(params, sample)
    probes = points[:8]
    results = {}
    inert = []
    for obs in family_observables(params.family):
        broken = corrupted(obs, params, probes)
        if broken is None:
            inert.append(obs.name)
            continue
        results[obs.name] = max(
            scaled_residual(broken, hamiltonian, params, pt) for pt in points)
    return results, tuple(inert)


def certificate(params, sample=None, config=None, corrupt=None):
    """Run every applicable check and aggregate the evidence.

    Check failures turn the verdict, never raise; a check that cannot run
    for structural reasons is recorded as skipped with its reason.
    `corrupt` names one integral to corrupt before the bracket suite, as a
    live demonstration that a broken claim fails the certificate.
    """
    sample = sample or SampleConfig()
    config = config or IntegratorConfig(t_end=10.0)
    points = _points(params, sample)
    checks = []

    suite = bracket_residual_suite(params, sample, points, corrupt=corrupt)
    for name, stats in suite.items():
        note = "+10% corruption applied" if name == corrupt else None
        checks.append(CheckResult(
            f"bracket:{name}", stats.max_residual, sample.bracket_tol,
            stats.max_residual <= sample.bracket_tol, note=note))

    involution_stats = involution_check(params, sample=sample, points=points)
    if params.family == "na_central":
        res = involution_stats["J11,J22"]
        checks.append(CheckResult(
            "involution:J11,J22", res, sample.bracket_tol,
            res <= sample.bracket_tol))

    names = CLAIMED_TRIPLES[params.family]
    fraction, failures = independence_stats(params, sample, names, points)
    floor = sample.independence_fraction
    checks.append(CheckResult(
        "independence:" + ",".join(names), 1.0 - fraction, 1.0 - floor,
        fraction >= floor,
        note=f"full rank at {fraction:.1%} of {len(points)} points"))

    try:
        res = killing_tensor_check(params, sample, points)
        checks.append(CheckResult(
            "killing_tensor", res, sample.bracket_tol,
            res <= sample.bracket_tol))
    except NoQuadraticIntegral as exc:
        checks.append(CheckResult(
            "killing_tensor", None, sample.bracket_tol, None,
            note=f"skipped: {exc}"))

    for name, res in identity_suite(params, sample, points).items():
        checks.append(CheckResult(
            f"identity:{name}", res, sample.identity_tol,
            res <= sample.identity_tol))

    if params.family == "na_prime":
        for name, res in algebra_check(params, sample, points).items():
            checks.append(CheckResult(
                f"algebra:{name}", res, sample.bracket_tol,
                res <= sample.bracket_tol))

    if params.family in ("na_prime", "nd"):
        for name, res in evolution_law_check(params, sample, points).items():
            checks.append(CheckResult(
                f"evolution:{name}", res, sample.evolution_tol,
                res <= sample.evolution_tol))

    results, inert = corruption_suite(params, sample, points)
    if results:
        weakest = min(results.values())
        note = "passes when the corrupted residual exceeds tolerance"
        if inert:
            note += f"; inert (single-term): {','.join(inert)}"
        checks.append(CheckResult(
            "negative_control", weakest, sample.control_floor,
            weakest > sample.control_floor, note=note))
    else:
        checks.append(CheckResult(
            "negative_control", None, sample.control_floor, None,
            note="skipped: every bound integral is single-term"))

    try:
        trajectory = integrate(params, points[0], config)
        rep = drift_report(trajectory, sample.drift_tol)
        checks.append(CheckResult(
            "drift", rep.worst, sample.drift_tol,
            rep.worst <= sample.drift_tol,
            note=f"{trajectory.termination} at t={trajectory.times[-1]:.3g}"))
    except EmptyTrajectory as exc:
        checks.append(CheckResult(
            "drift", None, sample.drift_tol, None, note=f"skipped: {exc}"))

    verdict = "pass" if all(c.passed is not False for c in checks) else "fail"
    return Certificate(
        params=params,
        checks=tuple(checks),
        involution_stats=involution_stats,
        independence_fraction=fraction,
        rank_failures=failures,
        verdict=verdict,
    )
