"""Kraus channels: operator content, completeness, two-sided evolution."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decolab import (
    CHANNEL_KINDS,
    ChannelError,
    ChannelKind,
    KrausChannel,
    Pauli,
    amplitude_damping,
    apply_local,
    flip_channel,
    is_trace_preserving,
    is_x_state,
    make_channel,
    maximally_mixed,
    phase_damping,
    singlet,
    time_to_p,
    werner,
)
from decolab.channels import evolve_matrix

p_values = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def apply_single_qubit(operators, rho2):
    """Kraus sum on a bare single-qubit state, for channel-level checks."""
    out = np.zeros((2, 2), dtype=complex)
    for k in operators:
        out += k @ rho2 @ k.conj().T
    return out


class TestFlipChannels:
    def test_noiseless_limit(self):
        ch = flip_channel(Pauli.X, 0.0)
        assert ch.kind is ChannelKind.BIT_FLIP
        assert np.array_equal(ch.operators[0], np.eye(2))
        assert np.abs(ch.operators[1]).max() == 0.0
        rho = werner(0.7)
        assert np.array_equal(apply_local(ch, ch, rho).matrix, rho.matrix)

    def test_deterministic_error_limit(self):
        ch = flip_channel(Pauli.Z, 1.0)
        assert ch.kind is ChannelKind.PHASE_FLIP
        assert np.abs(ch.operators[0]).max() == 0.0
        assert np.array_equal(ch.operators[1], Pauli.Z.matrix())

    def test_completeness_quarter(self):
        ch = flip_channel(Pauli.X, 0.25)
        total = sum(k.conj().T @ k for k in ch.operators)
        assert np.abs(total - np.eye(2)).max() <= 1e-15

    def test_axis_to_kind(self):
        assert flip_channel(Pauli.Y, 0.5).kind is ChannelKind.BIT_PHASE_FLIP

    def test_bit_phase_flip_trace_preserving_grid(self):
        for p in np.linspace(0.0, 1.0, 11):
            assert is_trace_preserving(flip_channel(Pauli.Y, float(p)))

    @pytest.mark.parametrize("p", [-0.01, 1.01])
    def test_domain_error(self, p):
        with pytest.raises(ValueError):
            flip_channel(Pauli.X, p)


class TestDampingChannels:
    def test_phase_damping_operators(self):
        ch = phase_damping(0.36)
        assert np.array_equal(ch.operators[0], np.diag([1.0, 0.8]))
        assert np.array_equal(ch.operators[1], np.diag([0.0, 0.6]))

    def test_phase_damping_identity_limit(self):
        ch = phase_damping(0.0)
        assert np.array_equal(ch.operators[0], np.eye(2))
        assert np.abs(ch.operators[1]).max() == 0.0

    def test_full_dephasing_kills_coherence(self):
        ch = phase_damping(1.0)
        rho2 = np.array([[0.5, 0.4 - 0.1j], [0.4 + 0.1j, 0.5]])
        out = apply_single_qubit(ch.operators, rho2)
        assert np.abs(out - np.diag([0.5, 0.5])).max() <= 1e-15

    @settings(max_examples=60, deadline=None)
    @given(p=p_values)
    def test_phase_damping_preserves_populations(self, p):
        ch = phase_damping(p)
        rho2 = np.array([[0.3, 0.2], [0.2, 0.7]], dtype=complex)
        out = apply_single_qubit(ch.operators, rho2)
        assert abs(out[0, 0] - 0.3) <= 1e-15 and abs(out[1, 1] - 0.7) <= 1e-15

    def test_amplitude_damping_operators(self):
        ch = amplitude_damping(0.3)
        k0, k1 = ch.operators
        assert np.array_equal(k0, np.diag([1.0, math.sqrt(0.7)]))
        assert k1[0, 1] == math.sqrt(0.3) and k1[0, 0] == k1[1, 0] == k1[1, 1] == 0.0
        total = k0.conj().T @ k0 + k1.conj().T @ k1
        assert np.abs(total - np.eye(2)).max() <= 1e-15

    def test_full_damping_reaches_ground_state(self):
        ch = amplitude_damping(1.0)
        for rho2 in (np.diag([0.2, 0.8]), np.array([[0.5, 0.5], [0.5, 0.5]])):
            out = apply_single_qubit(ch.operators, rho2.astype(complex))
            assert np.abs(out - np.diag([1.0, 0.0])).max() <= 1e-15


class TestApplyLocal:
    def test_none_sides_are_identity(self):
        rho = werner(0.42)
        assert np.array_equal(apply_local(None, None, rho).matrix, rho.matrix)

    def test_double_bit_flip_fixes_singlet(self):
        # (sx (x) sx) |psi-> = -|psi->, so the projector is invariant
        ch = flip_channel(Pauli.X, 1.0)
        out = apply_local(ch, ch, singlet())
        assert np.abs(out.matrix - singlet().matrix).max() <= 1e-15

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.8, 1.0])
    def test_full_dephasing_dephases_werner(self, r):
        ch = phase_damping(1.0)
        out = apply_local(ch, ch, werner(r))
        expected = np.diag([(1 - r) / 4, (1 + r) / 4, (1 + r) / 4, (1 - r) / 4])
        assert np.abs(out.matrix - expected).max() <= 1e-15

    def test_matches_brute_force_kraus_sum(self):
        rng = np.random.default_rng(31)
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = g @ g.conj().T
        m /= m.trace().real
        cha = amplitude_damping(0.35)
        chb = phase_damping(0.6)
        expected = np.zeros((4, 4), dtype=complex)
        for ka in cha.operators:
            for kb in chb.operators:
                big = np.kron(ka, kb)
                expected += big @ m @ big.conj().T
        assert np.abs(evolve_matrix(cha, chb, m) - expected).max() <= 1e-15

    def test_preserves_x_structure_for_all_channel_pairs(self):
        ps = np.linspace(0.0, 1.0, 11)
        for kind_a in CHANNEL_KINDS:
            for kind_b in CHANNEL_KINDS:
                for p in ps:
                    cha = make_channel(kind_a, float(p))
                    chb = make_channel(kind_b, float(p))
                    for r in (0.5, 1.0):
                        assert is_x_state(apply_local(cha, chb, werner(r)))

    def test_flip_channels_are_unital(self):
        mixed = maximally_mixed()
        for kind in ("bit-flip", "bit-phase-flip", "phase-flip"):
            for p in np.linspace(0.0, 1.0, 11):
                ch = make_channel(kind, float(p))
                out = apply_local(ch, ch, mixed)
                assert np.abs(out.matrix - mixed.matrix).max() <= 1e-12

    def test_amplitude_damping_is_not_unital(self):
        ch = amplitude_damping(0.5)
        out = apply_local(ch, ch, maximally_mixed())
        assert np.abs(out.matrix - maximally_mixed().matrix).max() > 1e-3

    def test_phase_damping_composition_semigroup(self):
        # applying p1 then p2 equals a single application at p1 + p2 - p1*p2
        p1, p2 = 0.3, 0.45
        rho = werner(0.6)
        once = apply_local(phase_damping(p1), phase_damping(p1), rho)
        twice = apply_local(phase_damping(p2), phase_damping(p2), once)
        combined = p1 + p2 - p1 * p2
        direct = apply_local(phase_damping(combined), phase_damping(combined), rho)
        assert np.abs(twice.matrix - direct.matrix).max() <= 1e-10

    @settings(max_examples=60, deadline=None)
    @given(p=p_values, kind=st.sampled_from(CHANNEL_KINDS))
    def test_evolved_states_stay_valid(self, p, kind):
        ch = make_channel(kind, p)
        out = apply_local(ch, ch, werner(0.9))
        assert abs(out.matrix.trace().real - 1.0) <= 1e-12


class TestChannelPlumbing:
    def test_make_channel_rejects_unknown(self):
        with pytest.raises(ChannelError, match="unknown channel"):
            make_channel("depolarizing", 0.5)

    def test_kraus_channel_enforces_completeness(self):
        with pytest.raises(ChannelError, match="trace preserving"):
            KrausChannel(ChannelKind.BIT_FLIP, 0.0, (0.9 * np.eye(2),))

    def test_is_trace_preserving_on_raw_operators(self):
        assert is_trace_preserving(phase_damping(0.4))
        assert not is_trace_preserving([0.9 * np.eye(2)])

    def test_time_to_p(self):
        assert time_to_p(1.0, 0.0) == 0.0
        assert time_to_p(0.0, 5.0) == 0.0
        assert abs(time_to_p(1.0, math.log(2.0)) - 0.5) <= 1e-12
        with pytest.raises(ValueError):
            time_to_p(-1.0, 1.0)
        with pytest.raises(ValueError):
            time_to_p(1.0, -2.0)

    def test_stable_identifiers(self):
        assert CHANNEL_KINDS == (
            "bit-flip",
            "bit-phase-flip",
            "phase-flip",
            "phase-damping",
            "amplitude-damping",
        )
