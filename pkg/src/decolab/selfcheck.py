"""Bundled invariant suite behind ``decolab verify``.

Each group re-derives a property of the implementation from an independent
angle (closed forms, completeness sums, sampling bounds, symmetry) and
reports the worst deviation it observed.  The CLI prints one line per
group and exits nonzero if any group fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import CHANNEL_KINDS, apply_local, completeness_defect, make_channel
from .measures import (
    concurrence_general,
    concurrence_x,
    dephase,
    relative_entropy,
    reqc,
    variational_reqc_check,
)
from .states import DensityMatrix, maximally_mixed, werner
from .sweep import DEFAULT_R_VALUES, GridSpec, SweepConfig, sweep_p, sweep_r


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_density(rng: np.random.Generator) -> DensityMatrix:
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real)


def _check_completeness_and_validity() -> CheckResult:
    ps = np.linspace(0.0, 1.0, 101)
    worst = 0.0
    for kind in CHANNEL_KINDS:
        for p in ps:
            ch = make_channel(kind, float(p))
            worst = max(worst, completeness_defect(ch.operators))
            for r in DEFAULT_R_VALUES:
                evolved = apply_local(ch, ch, werner(r))
                DensityMatrix(evolved.matrix)  # full re-validation
    return CheckResult(
        "kraus-completeness-and-state-validity",
        worst <= 1e-12,
        f"max completeness defect {worst:.3e} (tol 1e-12)",
    )


def _check_x_concurrence_agreement() -> CheckResult:
    ps = np.linspace(0.0, 1.0, 101)
    worst = 0.0
    for kind in CHANNEL_KINDS:
        for r in DEFAULT_R_VALUES:
            rho0 = werner(r)
            for p in ps:
                ch = make_channel(kind, float(p))
                evolved = apply_local(ch, ch, rho0)
                worst = max(
                    worst, abs(concurrence_general(evolved) - concurrence_x(evolved))
                )
    return CheckResult(
        "general-vs-x-concurrence",
        worst <= 1e-9,
        f"max |general - closed form| = {worst:.3e} (tol 1e-9)",
    )


def _check_variational_bound(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    states = [_random_density(rng) for _ in range(20)]
    states += [werner(r) for r in np.linspace(0.0, 1.0, 11)]
    worst_gap = 0.0
    worst_undercut = 0.0
    for i, rho in enumerate(states):
        min_sampled, closed = variational_reqc_check(rho, 1000, seed + i)
        worst_gap = max(worst_gap, abs(relative_entropy(rho, dephase(rho)) - closed))
        worst_undercut = max(worst_undercut, closed - min_sampled)
    passed = worst_gap <= 1e-9 and worst_undercut <= 1e-9
    return CheckResult(
        "variational-coherence-bound",
        passed,
        f"max |S(rho||rho_d) - closed form| = {worst_gap:.3e}, "
        f"max undercut {worst_undercut:.3e} (tol 1e-9)",
    )


def _check_phase_flip_symmetry() -> CheckResult:
    grid = GridSpec()
    worst = 0.0
    for r in DEFAULT_R_VALUES:
        config = SweepConfig(channel="phase-flip", r_values=(r,), p_grid=grid)
        records = sweep_p(config)
        for rec, mirrored in zip(records, reversed(records)):
            worst = max(
                worst,
                abs(rec.reqc - mirrored.reqc),
                abs(rec.concurrence - mirrored.concurrence),
            )
    return CheckResult(
        "phase-flip-p-symmetry",
        worst <= 1e-10,
        f"max |f(p) - f(1-p)| = {worst:.3e} (tol 1e-10)",
    )


def _check_noiseless_consistency() -> CheckResult:
    base = {
        rec.r: rec for rec in sweep_r(GridSpec(start=0.4, stop=1.0, count=4))
    }
    worst = 0.0
    for kind in CHANNEL_KINDS:
        config = SweepConfig(
            channel=kind,
            r_values=DEFAULT_R_VALUES,
            p_grid=GridSpec(start=0.0, stop=1.0, count=2),
        )
        for rec in sweep_p(config):
            if rec.p == 0.0:
                worst = max(
                    worst,
                    abs(rec.reqc - base[rec.r].reqc),
                    abs(rec.concurrence - base[rec.r].concurrence),
                )
    return CheckResult(
        "noiseless-consistency",
        worst <= 1e-12,
        f"max |p=0 sweep - pure r sweep| = {worst:.3e} (tol 1e-12)",
    )


def _check_unitality() -> CheckResult:
    mixed = maximally_mixed()
    worst_flip = 0.0
    for kind in ("bit-flip", "bit-phase-flip", "phase-flip"):
        for p in np.linspace(0.0, 1.0, 11):
            ch = make_channel(kind, float(p))
            evolved = apply_local(ch, ch, mixed)
            worst_flip = max(worst_flip, np.abs(evolved.matrix - mixed.matrix).max())
    ad = make_channel("amplitude-damping", 0.5)
    ad_moved = np.abs(apply_local(ad, ad, mixed).matrix - mixed.matrix).max()
    passed = worst_flip <= 1e-12 and ad_moved > 1e-3
    return CheckResult(
        "flip-unitality",
        passed,
        f"flip defect {worst_flip:.3e} (tol 1e-12); amplitude damping moved I/4 by {ad_moved:.3e}",
    )


def _check_werner_concurrence_form() -> CheckResult:
    worst = 0.0
    for r in np.linspace(0.0, 1.0, 101):
        expected = max(0.0, (3.0 * r - 1.0) / 2.0)
        worst = max(worst, abs(concurrence_general(werner(float(r))) - expected))
    return CheckResult(
        "werner-concurrence-closed-form",
        worst <= 1e-9,
        f"max deviation from max(0,(3r-1)/2) = {worst:.3e} (tol 1e-9)",
    )


def _check_reqc_range() -> CheckResult:
    worst_low, worst_high = 0.0, 0.0
    for kind in CHANNEL_KINDS:
        for r in DEFAULT_R_VALUES:
            for p in np.linspace(0.0, 1.0, 21):
                ch = make_channel(kind, float(p))
                value = reqc(apply_local(ch, ch, werner(r)))
                worst_low = min(worst_low, value)
                worst_high = max(worst_high, value)
    passed = worst_low >= 0.0 and worst_high <= 2.0
    return CheckResult(
        "reqc-range",
        passed,
        f"observed reqc range [{worst_low:.3e}, {worst_high:.6f}] within [0, 2]",
    )


def run_selfcheck(seed: int = 0) -> list[CheckResult]:
    """Run every property group; deterministic for a fixed seed."""
    return [
        _check_completeness_and_validity(),
        _check_x_concurrence_agreement(),
        _check_variational_bound(seed),
        _check_phase_flip_symmetry(),
        _check_noiseless_consistency(),
        _check_unitality(),
        _check_werner_concurrence_form(),
        _check_reqc_range(),
    ]
