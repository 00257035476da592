"""Linearity-violation witness, ancilla information tests, entropy accounting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .deletion import (
    DeletionDraw,
    DeletionIsometry,
    averaged_channel,
    build_r_deletion,
    deleted_slot_marginal,
    phi_state,
)
from .errors import ParameterError
from .linalg import NORM_TOL, StateVector, fidelity_with_pure, mixture, reduced_state, tensor, von_neumann_entropy
from .rng import RngStream
from .states import A_H, A_V, H, V, StateFamily, family_average, family_to_json, qubit, sample_standard_state

DEFAULT_THRESHOLD = 0.1


def _check_amplitudes(alpha: complex, beta: complex, tol: float = NORM_TOL) -> None:
    n = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(n - 1.0) > tol:
        raise ParameterError(f"|alpha|^2 + |beta|^2 = {n!r}, expected 1")


@dataclass(frozen=True)
class WitnessReport:
    alpha: complex
    beta: complex
    draw: DeletionDraw
    sigma1: tuple[str, StateVector]
    residual: float
    family: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [self.beta.real, self.beta.imag],
            "sigma1": self.sigma1[0],
            "draw": self.draw.labels(),
            "residual": self.residual,
        }


def actual_output(iso: DeletionIsometry, alpha: complex, beta: complex) -> StateVector:
    psi = qubit(alpha, beta)
    return iso.apply(tensor(psi, psi))


def hypothesis_output(sigma1: StateVector, alpha: complex, beta: complex) -> StateVector:
    """Output a fixed blank |S1> with linear ancilla alpha|A_H> + beta|A_V> would require."""
    return (
        (alpha * alpha) * tensor(H, sigma1, A_H)
        + (beta * beta) * tensor(V, sigma1, A_V)
        + (alpha * beta) * (tensor(H, sigma1, A_V) + tensor(V, sigma1, A_H))
    )


def eq9_residual(alpha: complex, beta: complex, iso: DeletionIsometry,
                 sigma1: tuple[str, StateVector], family: StateFamily | None = None) -> WitnessReport:
    """Distance between the true R-deletion output and the linear-ancilla hypothesis."""
    alpha, beta = complex(alpha), complex(beta)
    _check_amplitudes(alpha, beta)
    lhs = (
        (alpha * alpha) * iso.image(0, 0)
        + (beta * beta) * iso.image(1, 1)
        + (np.sqrt(2) * alpha * beta) * phi_state(iso)
    )
    rhs = hypothesis_output(sigma1[1], alpha, beta)
    residual = float(np.linalg.norm(lhs.amps - rhs.amps))
    return WitnessReport(alpha, beta, iso.draw, sigma1, residual, family_to_json(family) if family else {})


def witness_trial(family: StateFamily, alpha: complex, beta: complex, rng: RngStream) -> WitnessReport:
    """One fresh isometry (S2..S5) followed by one fresh S1, in that order."""
    iso = build_r_deletion(family, rng)
    sigma1 = sample_standard_state(family, rng)
    return eq9_residual(alpha, beta, iso, sigma1, family)


@dataclass(frozen=True)
class ResidualSummary:
    trials: int
    threshold: float
    min: float
    mean: float
    max: float
    fraction_above: float
    fraction_zero: float
    reports: tuple[WitnessReport, ...] = ()

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "threshold": self.threshold,
            "min": self.min,
            "mean": self.mean,
            "max": self.max,
            "fraction_above_threshold": self.fraction_above,
            "fraction_zero": self.fraction_zero,
        }


def residual_statistics(family: StateFamily, alpha: complex, beta: complex, trials: int,
                        rng: RngStream, threshold: float = DEFAULT_THRESHOLD) -> ResidualSummary:
    """Trial ``i`` draws from ``rng.split(i)``."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    reports = tuple(witness_trial(family, alpha, beta, rng.split(i)) for i in range(trials))
    r = np.array([rep.residual for rep in reports])
    return ResidualSummary(
        trials=trials,
        threshold=threshold,
        min=float(r.min()),
        mean=float(r.mean()),
        max=float(r.max()),
        fraction_above=float(np.mean(r > threshold)),
        fraction_zero=float(np.mean(r <= NORM_TOL)),
        reports=reports,
    )


def ancilla_state(iso: DeletionIsometry, alpha: complex, beta: complex):
    return reduced_state(actual_output(iso, alpha, beta), [2])


def ancilla_linear_hypothesis_error(iso: DeletionIsometry, alpha: complex, beta: complex) -> float:
    """1 - <a|rho_anc|a> with a = alpha|A_H> + beta|A_V>."""
    alpha, beta = complex(alpha), complex(beta)
    _check_amplitudes(alpha, beta)
    target = alpha * A_H + beta * A_V
    return max(0.0, 1.0 - fidelity_with_pure(ancilla_state(iso, alpha, beta), target))


@dataclass(frozen=True)
class EntropyReport:
    family: dict
    deleted_slot_entropy: float
    total_slots: int
    bound: float

    @property
    def randomized_fraction(self) -> float:
        return 1.0 / self.total_slots

    @property
    def within_bound(self) -> bool:
        return 0.0 <= self.deleted_slot_entropy <= 1.0 <= self.bound

    def to_json(self) -> dict:
        return {
            "deleted_slot_entropy_bits": self.deleted_slot_entropy,
            "total_slots": self.total_slots,
            "bound_bits": self.bound,
            "randomized_fraction": self.randomized_fraction,
            "within_bound": self.within_bound,
        }


def entropy_account(family: StateFamily, n_slots: int) -> EntropyReport:
    """Entropy generated in the deleted slot against the n-bit randomization bound."""
    if n_slots < 1:
        raise ParameterError("n_slots must be >= 1")
    s = von_neumann_entropy(family_average(family))
    return EntropyReport(family_to_json(family), s, int(n_slots), float(n_slots))


def holevo_quantity(probs, rhos) -> float:
    avg = mixture(probs, rhos)
    return von_neumann_entropy(avg) - float(sum(p * von_neumann_entropy(r) for p, r in zip(probs, rhos)))


def deleted_slot_marginals(family: StateFamily, psis, mode: str = "exact",
                           n_samples: int | None = None, rng: RngStream | None = None):
    channel = averaged_channel(family, mode, n_samples, rng)
    return [deleted_slot_marginal(channel.apply_pure(tensor(psi, psi))) for psi in psis]


def holevo_leak(family: StateFamily, ensemble, mode: str = "exact",
                n_samples: int | None = None, rng: RngStream | None = None) -> float:
    """Holevo quantity of the deleted-slot marginals over an input ensemble ``[(p, psi), ...]``.

    Inputs are the doubled states psi ⊗ psi sent through the averaged channel.
    """
    probs = [float(p) for p, _ in ensemble]
    if not probs or abs(sum(probs) - 1.0) > NORM_TOL or min(probs) < 0:
        raise ParameterError("ensemble probabilities must be non-negative and sum to 1")
    marginals = deleted_slot_marginals(family, [psi for _, psi in ensemble], mode, n_samples, rng)
    return holevo_quantity(probs, marginals)
