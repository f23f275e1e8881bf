"""Hamiltonian flow: the exact vector field from dual gradients and an
embedded Runge-Kutta 5(4) integrator with conservation monitors.

The 5th-order solution propagates (local extrapolation); the embedded
4th-order solution only steers the step size.  Step control is error per
unit step: a step is accepted when the tolerance-scaled error estimate is
at most h, which keeps the global error near t_end * rtol instead of
N_steps * rtol.  Monitors (H plus every family integral) are evaluated at
accepted steps.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .brackets import gradient
from .dual import seed, tangent
from .errors import EmptyTrajectory
from .families import hamiltonian
from .observables import family_integrals, integral
from .phase import PhasePoint, check_point, singular_distance

COMPLETED = "Completed"
SINGULARITY = "SingularityApproach"
STEP_FAILURE = "StepFailure"

# Dormand-Prince 5(4) tableau, FSAL (seventh stage row equals the solution
# weights, so the last derivative evaluation seeds the next step)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
       11.0 / 84.0, 0.0)
_ERR = tuple(b5 - b4 for b5, b4 in zip(
    _B5, (5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0,
          -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0)))


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: float = 50.0
    rtol: float = 1e-10
    atol: float = 1e-12
    h_init: float = 1e-3
    h_min: float = 1e-12
    h_max: float = 1.0
    r_guard_min: float = 1e-3
    r_guard_max: float = 1e3
    phi_margin: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.h_min <= self.h_init <= self.h_max):
            raise ValueError("need 0 < h_min <= h_init <= h_max")
        if self.rtol <= 0.0 or self.atol <= 0.0 or self.t_end <= 0.0:
            raise ValueError("tolerances and horizon must be positive")


def fixed_step_config(h, t_end, base=None):
    """Config that forces step size h (order studies); tolerances disabled."""
    base = base or IntegratorConfig()
    return replace(base, t_end=t_end, h_init=h, h_min=h, h_max=h,
                   rtol=1e9, atol=1e9)


@dataclass(frozen=True)
class Trajectory:
    params: object
    times: np.ndarray
    states: np.ndarray
    monitors: dict
    termination: str
    n_accepted: int
    n_rejected: int

    def __len__(self):
        return len(self.times)

    def state(self, i):
        return PhasePoint(*self.states[i])

    def final(self):
        return self.state(len(self.times) - 1)


def hamilton_vector_field(params, point):
    """(dr/dt, dphi/dt, dp_r/dt, dp_phi/dt) = symplectic gradient of H."""
    g = gradient(hamiltonian, params, point)
    return (g.dF_dpr, g.dF_dpphi, -g.dF_dr, -g.dF_dphi)


def _field(params, y):
    r, phi, p_r, p_phi = seed(*y)
    t = tangent(hamiltonian(params, r, phi, p_r, p_phi))
    return (t[2], t[3], -t[0], -t[1])


def _try_field(params, y):
    # power/overflow failures past a singularity count as an invalid stage
    try:
        k = _field(params, y)
    except (ValueError, OverflowError, ZeroDivisionError):
        return None
    if all(math.isfinite(c) for c in k):
        return k
    return None


def _combine(y, h, coeffs, ks):
    out = list(y)
    for c, k in zip(coeffs, ks):
        if c != 0.0:
            hc = h * c
            for i in range(4):
                out[i] += hc * k[i]
    return tuple(out)


def _monitor_fns(params):
    fns = [("H", integral(params.family, "H"))]
    fns.extend((name, integral(params.family, name))
               for name in family_integrals(params.family))
    return fns


def integrate(params, initial, config=None):
    """Integrate Hamilton's equations from `initial`.

    Never raises mid-run: early stops are reported through the trajectory's
    termination tag (guard crossings as SingularityApproach, a collapsed
    step size with finite values as StepFailure).
    """
    config = config or IntegratorConfig()
    check_point(initial, params, config.phi_margin)
    monitors = _monitor_fns(params)

    y = initial.as_tuple()
    t = 0.0
    times = [t]
    states = [y]
    mon_values = {name: [fn(params, *y)] for name, fn in monitors}
    k1 = _try_field(params, y)
    termination = COMPLETED
    n_accepted = 0
    n_rejected = 0
    h = min(config.h_init, config.t_end)

    if k1 is None:
        termination = SINGULARITY
    while termination == COMPLETED and t < config.t_end - 1e-12:
        h = min(h, config.h_max, config.t_end - t)
        ks = [k1]
        for stage in range(1, 7):
            y_stage = _combine(y, h, _A[stage], ks)
            k = _try_field(params, y_stage)
            if k is None:
                break
            ks.append(k)
        if len(ks) < 7:
            n_rejected += 1
            h *= 0.25
            if h < config.h_min:
                termination = SINGULARITY
            continue

        y_new = _combine(y, h, _B5, ks)
        err_vec = _combine((0.0,) * 4, h, _ERR, ks)
        err = 0.0
        for i in range(4):
            scale = config.atol + config.rtol * max(abs(y[i]), abs(y_new[i]))
            err += (err_vec[i] / scale) ** 2
        err = math.sqrt(0.25 * err)

        if err <= h:
            r_new, phi_new = y_new[0], y_new[1]
            if not (config.r_guard_min <= r_new <= config.r_guard_max):
                termination = SINGULARITY
                break
            if singular_distance(params.family, params.n,
                                 phi_new) <= config.phi_margin:
                termination = SINGULARITY
                break
            t += h
            y = y_new
            k1 = ks[6]
            n_accepted += 1
            times.append(t)
            states.append(y)
            for name, fn in monitors:
                mon_values[name].append(fn(params, *y))
            # steer toward err = h/4: the loose accept gate (err <= h) with a
            # tighter target keeps rejections rare while holding the realized
            # error per unit time a factor of several under rtol
            factor = (5.0 if err == 0.0
                      else min(5.0, max(0.2, 0.9 * (0.25 * h / err) ** 0.2)))
            h *= factor
        else:
            n_rejected += 1
            h_next = h * max(0.2, 0.9 * (0.25 * h / err) ** 0.2)
            if h_next < config.h_min:
                termination = STEP_FAILURE
                break
            h = h_next

    return Trajectory(
        params=params,
        times=np.asarray(times),
        states=np.asarray(states),
        monitors={name: np.asarray(vals) for name, vals in mon_values.items()},
        termination=termination,
        n_accepted=n_accepted,
        n_rejected=n_rejected,
    )


@dataclass(frozen=True)
class MonitorDrift:
    name: str
    initial: float
    max_abs_drift: float
    rel_drift: float
    flagged: bool


@dataclass(frozen=True)
class DriftReport:
    drifts: tuple
    tolerance: float

    @property
    def exceeded(self):
        return tuple(d.name for d in self.drifts if d.flagged)

    @property
    def worst(self):
        return max((d.rel_drift for d in self.drifts), default=0.0)


def drift_report(trajectory, tolerance=1e-6, names=None):
    """Per-monitor drift relative to max(1, |initial value|).

    `names` restricts the report to a subset of the recorded monitors.
    """
    if len(trajectory) < 2:
        raise EmptyTrajectory(f"{len(trajectory)} recorded state(s)")
    drifts = []
    for name, series in trajectory.monitors.items():
        if names is not None and name not in names:
            continue
        j0 = series[0]
        max_abs = float(np.max(np.abs(series - j0)))
        rel = max_abs / max(1.0, abs(j0))
        drifts.append(MonitorDrift(name, float(j0), max_abs, rel,
                                   rel > tolerance))
    return DriftReport(drifts=tuple(drifts), tolerance=tolerance)


def time_reversal_defect(params, initial, config=None, forward=None):
    """Max coordinate defect of the forward/backward round trip.

    Pass a precomputed forward trajectory to skip re-integration.  Returns
    None when either leg stops before its horizon (the round trip is then
    undefined).
    """
    if forward is None:
        forward = integrate(params, initial, config)
    if forward.termination != COMPLETED:
        return None
    turn = forward.final()
    back = integrate(
        params,
        PhasePoint(turn.r, turn.phi, -turn.p_r, -turn.p_phi),
        config,
    )
    if back.termination != COMPLETED:
        return None
    end = back.final()
    return max(abs(end.r - initial.r), abs(end.phi - initial.phi),
               abs(end.p_r + initial.p_r), abs(end.p_phi + initial.p_phi))


def final_state_distance(a, b):
    return max(abs(x - y) for x, y in zip(a.as_tuple(), b.as_tuple()))
