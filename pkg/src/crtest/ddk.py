"""Normal-calibrated concordance test of Dewan, Deshpande & Kulathinal (2004).

The statistic is the tau-scaled concordance between failure cause and failure
time: twice the pair-average estimate delta_hat of

    delta = P(T1 > T2, J1 = 1, J2 = 2) - P(T1 > T2, J1 = 2, J2 = 1).

Normalization note (this pins down the scaling used here): under
independence, sqrt(n) * (2 * delta_hat) is asymptotically normal with mean 0
and variance (4/3) * p1 * (1 - p1), where p1 = P(J = 1).  That variance
belongs to the *doubled* estimate — a Kendall-tau-type quantity; the variance
of sqrt(n) * delta_hat itself is p1 * (1 - p1) / 3, four times smaller.
Standardizing delta_hat without the factor 2 against the (4/3) p1 (1 - p1)
law would deflate the statistic and collapse the rejection rate to near zero,
so the z-score implemented here is

    z = 2 * sqrt(n) * delta_hat / sqrt((4/3) * p1_hat * (1 - p1_hat)).

The default decision is two-sided, which detects departures in either
direction and is the calibration comparable with the symmetric chi-square
test in :mod:`crtest.jel`; a one-sided upper-tail variant is exposed for the
ordered alternative where only delta > 0 is of interest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .data import Sample
from .errors import DegenerateSample, SampleTooSmall
from .specialfn import normal_quantile, normal_sf
from .ustat import delta_hat


def zstat(d_hat: float, p1_hat: float, n: int) -> float:
    """Standardized statistic from precomputed pieces (see module note)."""
    if not 0.0 < p1_hat < 1.0:
        raise DegenerateSample(
            f"both causes must be observed; cause-1 fraction is {p1_hat!r}"
        )
    return 2.0 * math.sqrt(n) * d_hat / math.sqrt((4.0 / 3.0) * p1_hat * (1.0 - p1_hat))


def ddk_z(sample: Sample) -> tuple[float, float, float]:
    """Compute ``(z, p1_hat, delta_hat)`` for a sample.

    Raises :class:`DegenerateSample` when only one cause appears (the
    plug-in null variance is zero) and :class:`SampleTooSmall` for n < 2.
    """
    n = sample.n
    if n < 2:
        raise SampleTooSmall(f"the z statistic needs n >= 2 observations, got {n}")
    p1_hat = sample.count_cause(1) / n
    d_hat = delta_hat(sample)
    return zstat(d_hat, p1_hat, n), p1_hat, d_hat


@dataclass(frozen=True)
class DdkTestResult:
    """Outcome of the normal-calibrated concordance test."""

    z: float
    p_value: float
    reject: bool
    alpha: float
    two_sided: bool
    p1_hat: float
    delta_hat: float
    n: int

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "p_value": self.p_value,
            "reject": self.reject,
            "alpha": self.alpha,
            "two_sided": self.two_sided,
            "p1_hat": self.p1_hat,
            "delta_hat": self.delta_hat,
            "n": self.n,
        }


def ddk_test(sample: Sample, alpha: float = 0.05, two_sided: bool = True) -> DdkTestResult:
    """Run the concordance test at level ``alpha`` (two-sided by default)."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha!r}")
    z, p1_hat, d_hat = ddk_z(sample)
    if two_sided:
        p_value = 2.0 * normal_sf(abs(z))
        reject = abs(z) > normal_quantile(1.0 - alpha / 2.0)
    else:
        p_value = normal_sf(z)
        reject = z > normal_quantile(1.0 - alpha)
    return DdkTestResult(
        z=z,
        p_value=p_value,
        reject=reject,
        alpha=alpha,
        two_sided=two_sided,
        p1_hat=p1_hat,
        delta_hat=d_hat,
        n=sample.n,
    )
