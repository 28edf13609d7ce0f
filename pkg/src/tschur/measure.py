"""Probability mass functions on partitions and the sitewise matrix model.

The measure weights a partition by S_lambda(x;t) s_lambda(y) and normalizes
by the mixed Cauchy product Z = prod (1 - t x_i y_j)/(1 - x_i y_j).  With
rational parameters every probability is an exact Fraction; the Plancherel
and z-type specializations involve e^{-kappa} and real powers and are float.

The matrix model: entries are independent with
    P(0)  = (1 - u)/(1 - t u)
    P(k)  = P(0) u^k           (k >= 1, unmarked)
    P(k') = P(0) (-t) u^k      (k >= 1, marked)
where u = x_i y_j.  Sampling draws |a| geometrically by inverse CDF and marks
with an independent Bernoulli(-t/(1-t)), which reproduces the three-branch
law exactly.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rsk as rsk_mod
from .partitions import partitions, partitions_up_to, syt_count
from .symfunc import PowerSumSpec, probabilistic_valid, schur, t_schur


@dataclass(frozen=True)
class TSchurParams:
    xs: tuple
    ys: tuple
    t: Fraction

    @classmethod
    def from_lists(cls, xs, ys, t):
        xs = tuple(Fraction(x) for x in xs)
        ys = tuple(Fraction(y) for y in ys)
        t = Fraction(t)
        for v in xs + ys:
            if not 0 <= v < 1:
                raise ValueError("variables must lie in [0, 1)")
        for x in xs:
            for y in ys:
                if x * y >= 1:
                    raise ValueError("need x_i y_j < 1")
        if not probabilistic_valid(t):
            raise ValueError("probabilities require t <= 0")
        return cls(xs, ys, t)

    @property
    def normalization(self):
        """Z = prod (1 - t x_i y_j)/(1 - x_i y_j), exact."""
        z = Fraction(1)
        for x in self.xs:
            for y in self.ys:
                c = x * y
                z *= (1 - self.t * c) / (1 - c)
        return z

    def spec_x(self, cap):
        return PowerSumSpec.from_variables(self.xs, cap)

    def spec_y(self, cap):
        return PowerSumSpec.from_variables(self.ys, cap)

    def weight(self, lam):
        """Unnormalized weight S_lambda(x;t) s_lambda(y), exact."""
        n = sum(lam)
        if n == 0:
            return Fraction(1)
        sy = schur(self.spec_y(n), lam)
        if sy == 0:
            return Fraction(0)
        return t_schur(self.spec_x(n), self.t, lam) * sy

    def prob(self, lam):
        return self.weight(lam) / self.normalization


@dataclass(frozen=True)
class TPlancherelParams:
    a: float
    b: float
    t: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a, b must be positive")
        if self.t > 0:
            raise ValueError("probabilities require t <= 0")

    @property
    def kappa(self):
        return (1 - self.t) * self.a * self.b


def plancherel_prob(params, lam):
    """e^{-kappa} kappa^{|lambda|} / (|lambda|!)^2 * (f^lambda)^2."""
    kappa = params.kappa
    n = sum(lam)
    f = syt_count(lam)
    return math.exp(-kappa) * kappa ** n / math.factorial(n) ** 2 * f * f


@dataclass(frozen=True)
class TZParams:
    z: Fraction
    zprime: Fraction
    xi: Fraction
    t: Fraction

    @classmethod
    def make(cls, z, zprime, xi, t):
        z, zprime, xi, t = Fraction(z), Fraction(zprime), Fraction(xi), Fraction(t)
        if not 0 <= xi < 1:
            raise ValueError("xi must lie in [0, 1)")
        return cls(z, zprime, xi, t)

    @property
    def positivity_guaranteed(self):
        """Positivity holds for t <= 0 with positive integer z, z'.

        Outside that regime values are still computed; negativity is the
        caller's signal that the parameters left the probabilistic domain.
        """
        return (
            self.t <= 0
            and self.z.denominator == 1
            and self.zprime.denominator == 1
            and self.z > 0
            and self.zprime > 0
        )

    @property
    def log_normalization(self):
        return float(self.z * self.zprime) * math.log(
            (1 - float(self.t) * float(self.xi)) / (1 - float(self.xi))
        )


def tz_prob(params, lam):
    """xi^{|lambda|} S_lambda(1^z;t) s_lambda(1^{z'}) / ((1-t xi)/(1-xi))^{zz'}.

    Principal specializations are evaluated exactly (p_k = z); the final value
    is float because of the real power in the normalization.
    """
    n = sum(lam)
    cap = max(n, 1)
    sx = t_schur(PowerSumSpec.principal(params.z, cap), params.t, lam)
    sy = schur(PowerSumSpec.principal(params.zprime, cap), lam)
    weight = float(params.xi ** n * sx * sy)
    return weight * math.exp(-params.log_normalization)


# ---------------------------------------------------------------------------
# Sitewise matrix model
# ---------------------------------------------------------------------------

def sample_matrix_model(m, n, params, seed):
    """Draw an AMatrix with the independent sitewise law.

    Uses x_1..x_m and y_1..y_n from `params` (which must supply at least that
    many variables).  Replays are bit-identical for a given seed.
    """
    if m > len(params.xs) or n > len(params.ys):
        raise ValueError("params do not provide enough variables")
    rng = np.random.default_rng(seed)
    t = float(params.t)
    q_mark = (-t) / (1 - t)
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            u = float(params.xs[i] * params.ys[j])
            p0 = (1 - u) / (1 - t * u)
            r = rng.random()
            if r < p0 or u == 0.0:
                row.append((0, False))
                continue
            # inverse CDF of the geometric magnitude law P(k) = (1-u) u^{k-1}
            v = rng.random()
            if v == 0.0:
                v = 5e-324
            mag = 1 + int(math.floor(math.log(v) / math.log(u)))
            mag = max(mag, 1)
            primed = rng.random() < q_mark
            row.append((mag, primed))
        rows.append(row)
    return rsk_mod.AMatrix.from_rows(rows)


def sitewise_pmf(u, t, entry):
    """Exact sitewise probability of a single entry (mag, primed)."""
    u, t = Fraction(u), Fraction(t)
    mag, primed = entry
    base = (1 - u) / (1 - t * u)
    if mag == 0:
        return base if not primed else Fraction(0)
    p = base * u ** mag
    return p * (-t) if primed else p


@dataclass
class PushforwardReport:
    m: int
    n: int
    trials: int
    seed: int
    shapes: dict  # shape -> (count, expected, sigma_distance)
    max_sigma: float
    passed: bool
    min_expected: float = 25.0

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "max_sigma": self.max_sigma,
            "passed": self.passed,
            "shapes": {
                str(list(k)): {"count": c, "expected": e, "sigma": s}
                for k, (c, e, s) in self.shapes.items()
            },
        }


def pushforward_check(m, n, params, trials, Dmax, seed, sigma_gate=4.0):
    """Empirical matrix-model shape law vs the exact measure.

    Samples `trials` matrices, pushes each through the insertion
    correspondence, and compares shape frequencies with prob(lambda) for all
    |lambda| <= Dmax whose expected count is at least `min_expected`.
    """
    sub = TSchurParams.from_lists(params.xs[:m], params.ys[:n], params.t)
    counts = {}
    rng_seed = np.random.default_rng(seed)
    seeds = rng_seed.integers(0, 2 ** 63 - 1, size=trials)
    for k in range(trials):
        mat = sample_matrix_model(m, n, sub, int(seeds[k]))
        s_tab, _ = rsk_mod.rsk(mat)
        shape = rsk_mod.shape_of(s_tab)
        counts[shape] = counts.get(shape, 0) + 1

    shapes = {}
    max_sigma = 0.0
    for lam in partitions_up_to(Dmax):
        p = float(sub.prob(lam))
        expected = trials * p
        if expected < 25.0:
            continue
        c = counts.get(tuple(lam), 0)
        sigma = math.sqrt(trials * p * (1 - p))
        dist = abs(c - expected) / sigma if sigma > 0 else 0.0
        shapes[tuple(lam)] = (c, expected, dist)
        max_sigma = max(max_sigma, dist)
    return PushforwardReport(
        m, n, trials, seed, shapes, max_sigma, passed=max_sigma < sigma_gate
    )


def conditional_plancherel_check(params, N):
    """Prop-style ratio identity: conditioning on |lambda| = N yields
    (f^lambda)^2 / N!, checked exactly via the hook-length counts."""
    total = sum(syt_count(lam) ** 2 for lam in partitions(N))
    if total != math.factorial(N):
        return False
    for lam in partitions(N):
        lhs = plancherel_prob(params, lam)
        base = (
            math.exp(-params.kappa)
            * params.kappa ** N
            / math.factorial(N) ** 2
        )
        rhs = base * syt_count(lam) ** 2
        if abs(lhs - rhs) > 1e-15 * max(abs(rhs), 1e-300):
            return False
    return True
