"""Cantor sets built by repeated middle-interval removal.

Two constructions share one engine:

* ``RatioCantorSet`` removes a middle portion of relative size c_k at
  generation k, where the ratio sequence c_k decreases to zero.  Its
  generation-k intervals all have length prod_{i<=k}(1 - c_i) / 2^k.
* ``SelfSimilarCantor`` keeps two copies scaled by a constant ratio
  r in (0, 1/2); generation-k intervals have length r^k and the set has
  similarity dimension ln 2 / ln(1/r).

All endpoints are exact rationals.  Internally a generation is stored as
integer numerators over one common denominator, so building and checking
deep generations stays cheap; ``Fraction`` views are materialised on demand.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence

DEFAULT_GENERATION_BUDGET = 20
GENERATION_BUDGET_ENV = "FRACTARC_GENERATION_BUDGET"

#: Ratio sequences must have dropped below this by the last validated index.
DEFAULT_TAIL_TOLERANCE = Fraction(1, 4)


class GenerationBudgetError(RuntimeError):
    """Requested generation exceeds the configured build cap."""


def generation_budget(default: int = DEFAULT_GENERATION_BUDGET) -> int:
    """Build cap, overridable through the environment."""
    raw = os.environ.get(GENERATION_BUDGET_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{GENERATION_BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{GENERATION_BUDGET_ENV} must be positive")
    return value


class RatioSequence:
    """Middle-removal ratios c_1, c_2, ... with each c_i in (0, 1).

    The sequence must be non-increasing and tend to zero; both are checked on
    a finite prefix (monotonicity index by index, smallness at the last
    validated index).
    """

    def __init__(self, kind: str, params: dict[str, Fraction],
                 evaluator: Callable[[int], Fraction]):
        self.kind = kind
        self.params = dict(params)
        self._evaluator = evaluator

    def __call__(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError("ratio indices start at 1")
        return self._evaluator(i)

    def __repr__(self) -> str:
        if self.params:
            inner = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            return f"RatioSequence({self.kind}: {inner})"
        return f"RatioSequence({self.kind})"

    @classmethod
    def dyadic(cls) -> "RatioSequence":
        """c_i = 2^-i, the default: keeps every endpoint dyadic."""
        return cls("dyadic", {}, lambda i: Fraction(1, 2 ** i))

    @classmethod
    def geometric(cls, q: Fraction) -> "RatioSequence":
        q = Fraction(q)
        if not 0 < q < 1:
            raise ValueError(f"geometric ratio base must lie in (0, 1), got {q}")
        return cls("geometric", {"q": q}, lambda i: q ** i)

    @classmethod
    def harmonic(cls) -> "RatioSequence":
        return cls("harmonic", {}, lambda i: Fraction(1, i + 1))

    def supremum(self) -> Fraction:
        """sup_i c_i; equals c_1 for a validated (non-increasing) sequence."""
        return self(1)

    def validate_prefix(self, length: int,
                        tail_tolerance: Fraction = DEFAULT_TAIL_TOLERANCE) -> None:
        prev: Optional[Fraction] = None
        for i in range(1, length + 1):
            c = self(i)
            if not 0 < c < 1:
                raise ValueError(f"ratio c_{i} = {c} is outside (0, 1)")
            if prev is not None and c > prev:
                raise ValueError(f"ratio sequence increases at index {i}: {c} > {prev}")
            prev = c
        if prev is not None and prev >= tail_tolerance:
            raise ValueError(
                f"ratio sequence has not decayed below {tail_tolerance} by index "
                f"{length}; it must tend to zero within the build budget")


@dataclass(frozen=True)
class CantorInterval:
    """One closed generation interval, with exact rational endpoints."""

    generation: int
    index: int  # 1-based, left to right within the generation
    lower: Fraction
    upper: Fraction

    @property
    def length(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper


class _BinaryCantorBase:
    """Shared engine: at each generation every interval [a, b] is replaced by
    its outer children [a, a + L_k] and [b - L_k, b], where L_k is the uniform
    generation-k length supplied by the subclass."""

    def __init__(self, max_generation: Optional[int] = None):
        self._max_generation = generation_budget() if max_generation is None else max_generation
        if self._max_generation < 1:
            raise ValueError("generation budget must be at least 1")
        # integer lattice per generation: endpoint numerators over _den[k]
        self._den: list[int] = [1]
        self._len_num: list[int] = [1]
        self._pairs: list[list[tuple[int, int]]] = [[(0, 1)]]
        self._interval_cache: dict[int, list[CantorInterval]] = {}
        self._endpoint_cache: dict[int, list[Fraction]] = {}
        self._numerator_cache: dict[int, tuple[list[int], list[int], int]] = {}

    # subclasses supply the exact generation length
    def generation_length(self, k: int) -> Fraction:
        raise NotImplementedError

    @property
    def max_generation(self) -> int:
        return self._max_generation

    @property
    def max_built_generation(self) -> int:
        return len(self._pairs) - 1

    def build(self, k: int) -> None:
        """Build (and cache) all generations up to k."""
        if k < 0:
            raise ValueError("generation must be non-negative")
        if k > self._max_generation:
            raise GenerationBudgetError(
                f"generation {k} exceeds the build cap {self._max_generation}; "
                f"interval counts double per level")
        while self.max_built_generation < k:
            g = self.max_built_generation + 1
            length = self.generation_length(g)
            if not 0 < length < self.generation_length(g - 1) / 2:
                raise ValueError(f"generation {g} length {length} leaves no middle gap")
            prev_den = self._den[g - 1]
            den = prev_den * length.denominator // gcd(prev_den, length.denominator)
            lift = den // prev_den
            ln = length.numerator * (den // length.denominator)
            pairs: list[tuple[int, int]] = []
            append = pairs.append
            for a, b in self._pairs[g - 1]:
                a *= lift
                b *= lift
                append((a, a + ln))
                append((b - ln, b))
            self._den.append(den)
            self._len_num.append(ln)
            self._pairs.append(pairs)

    def generation_intervals(self, k: int) -> list[CantorInterval]:
        """The 2^k generation-k intervals in increasing order (cached)."""
        self.build(k)
        cached = self._interval_cache.get(k)
        if cached is None:
            den = self._den[k]
            cached = [CantorInterval(k, j + 1, Fraction(a, den), Fraction(b, den))
                      for j, (a, b) in enumerate(self._pairs[k])]
            self._interval_cache[k] = cached
        return cached

    def interval_numerators(self, k: int) -> tuple[list[int], list[int], int]:
        """(lower numerators, upper numerators, denominator) for generation k.

        The raw lattice view; intended for exact bisection queries (cached).
        """
        cached = self._numerator_cache.get(k)
        if cached is None:
            self.build(k)
            lows = [a for a, _ in self._pairs[k]]
            highs = [b for _, b in self._pairs[k]]
            cached = (lows, highs, self._den[k])
            self._numerator_cache[k] = cached
        return cached

    def endpoints(self, k: int) -> list[Fraction]:
        """All 2^(k+1) generation-k interval endpoints, sorted increasing."""
        self.build(k)
        cached = self._endpoint_cache.get(k)
        if cached is None:
            den = self._den[k]
            cached = [Fraction(v, den) for pair in self._pairs[k] for v in pair]
            self._endpoint_cache[k] = cached
        return cached

    def interval_at(self, word: str) -> CantorInterval:
        """Interval addressed by a branch word over {0, 1} (0 = left child)."""
        if any(ch not in "01" for ch in word):
            raise ValueError(f"branch word must be over {{0,1}}, got {word!r}")
        k = len(word)
        self.build(k)
        idx = int(word, 2) if word else 0
        return self.generation_intervals(k)[idx]

    def verify_generation_lengths(self, up_to: int) -> bool:
        """Every built interval length equals the generation length exactly.

        Runs on the integer lattice, so deep generations check in milliseconds.
        """
        self.build(up_to)
        for k in range(up_to + 1):
            ln = self._len_num[k]
            if any(b - a != ln for a, b in self._pairs[k]):
                return False
            expected = self.generation_length(k)
            if Fraction(ln, self._den[k]) != expected:
                return False
        return True


class RatioCantorSet(_BinaryCantorBase):
    """Cantor set from a decreasing ratio sequence, on [0, 1]."""

    def __init__(self, ratios: RatioSequence, max_generation: Optional[int] = None,
                 tail_tolerance: Fraction = DEFAULT_TAIL_TOLERANCE):
        super().__init__(max_generation)
        ratios.validate_prefix(self._max_generation, tail_tolerance)
        self.ratios = ratios
        self._lengths: list[Fraction] = [Fraction(1)]

    def generation_length(self, k: int) -> Fraction:
        while len(self._lengths) <= k:
            g = len(self._lengths)
            self._lengths.append(self._lengths[g - 1] * (1 - self.ratios(g)) / 2)
        return self._lengths[k]

    def length_ratio(self, k: int) -> Fraction:
        """Exact consecutive-length ratio L_{k-1} / L_k = 2 / (1 - c_k)."""
        if k < 1:
            raise ValueError("length ratios start at generation 1")
        return 2 / (1 - self.ratios(k))

    def finite_generation_exponent(self, k: int) -> float:
        """k ln 2 / ln(1 / L_k): the depth-k box-counting exponent of the
        construction, increasing toward 1 when the ratios decrease to zero."""
        if k < 1:
            raise ValueError("exponent defined for k >= 1")
        return k * math.log(2.0) / -_log_fraction(self.generation_length(k))


class SelfSimilarCantor(_BinaryCantorBase):
    """Two-branch self-similar Cantor set with exact rational scaling ratio."""

    def __init__(self, ratio, max_generation: Optional[int] = None):
        super().__init__(max_generation)
        ratio = Fraction(ratio)
        if not 0 < ratio < Fraction(1, 2):
            raise ValueError(f"scaling ratio must lie in (0, 1/2), got {ratio}")
        self.ratio = ratio
        self._lengths: list[Fraction] = [Fraction(1)]

    @property
    def dimension(self) -> float:
        """Similarity dimension ln 2 / ln(1/r), in (0, 1)."""
        return math.log(2.0) / -_log_fraction(self.ratio)

    def generation_length(self, k: int) -> Fraction:
        while len(self._lengths) <= k:
            self._lengths.append(self._lengths[-1] * self.ratio)
        return self._lengths[k]


def _log_fraction(x: Fraction) -> float:
    # log of a positive rational without overflowing float conversion
    return math.log(x.numerator) - math.log(x.denominator)


def scaling_for_dimension(b: float, snap_denominator: int = 10 ** 9) -> SelfSimilarCantor:
    """Self-similar set of dimension b in (0, 1): scaling ratio r = 2^(-1/b).

    The ratio is irrational for most b, so it is stored as the rational
    closest to the float value (snapped to a small denominator whenever the
    snap is indistinguishable at 1e-13).  The round trip ln 2 / ln(1/r) agrees
    with b to within 1e-12.
    """
    if not (isinstance(b, (int, float)) and math.isfinite(b)):
        raise ValueError(f"dimension must be a finite number, got {b!r}")
    if not 0 < b < 1:
        raise ValueError(f"factor dimension must lie in (0, 1), got {b}")
    exact = Fraction(2.0 ** (-1.0 / b))
    snapped = exact.limit_denominator(snap_denominator)
    ratio = snapped if abs(snapped - exact) < Fraction(1, 10 ** 13) else exact
    result = SelfSimilarCantor(ratio)
    if abs(result.dimension - b) > 1e-12:
        result = SelfSimilarCantor(exact)
    assert abs(result.dimension - b) <= 1e-12
    return result


@dataclass(frozen=True)
class Address:
    """Branch words, one per coordinate, naming a generation cell.

    Every word has the same length (the generation depth); a single-word
    address names an interval of a one-dimensional set.
    """

    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("address needs at least one coordinate word")
        depth = len(self.words[0])
        for w in self.words:
            if len(w) != depth:
                raise ValueError("all coordinate words must share one length")
            if any(ch not in "01" for ch in w):
                raise ValueError(f"branch words are over {{0,1}}, got {w!r}")

    @property
    def depth(self) -> int:
        return len(self.words[0])

    @property
    def axes(self) -> int:
        return len(self.words)

    def truncated(self, depth: int) -> "Address":
        if depth > self.depth:
            raise ValueError("cannot extend an address by truncation")
        return Address(tuple(w[:depth] for w in self.words))

    @classmethod
    def random(cls, axes: int, depth: int, rng) -> "Address":
        return cls(tuple("".join(rng.choice("01") for _ in range(depth))
                         for _ in range(axes)))


class ProductCantor:
    """N-fold product of one self-similar factor, living in [0, 1]^N."""

    def __init__(self, factor: SelfSimilarCantor, copies: int):
        if copies < 1:
            raise ValueError("need at least one factor copy")
        self.factor = factor
        self.copies = copies

    @property
    def dimension(self) -> float:
        """Product dimension: copies * factor dimension."""
        return self.copies * self.factor.dimension

    @property
    def ambient_dimension(self) -> int:
        return self.copies

    def cell_count(self, k: int) -> int:
        return 2 ** (k * self.copies)

    def cell_box(self, address: Address):
        """Axis intervals of the cell named by a per-axis address."""
        if address.axes != self.copies:
            raise ValueError(f"address has {address.axes} words, product has {self.copies}")
        return tuple(self.factor.interval_at(w) for w in address.words)

    def min_corners(self, k: int, limit: int = 2 ** 22) -> list[tuple[Fraction, ...]]:
        """Lower-left corners of every generation-k cell (the cells' provable
        member points), in lexicographic order."""
        if self.cell_count(k) > limit:
            raise GenerationBudgetError(
                f"{self.cell_count(k)} cells at generation {k} exceed the sample cap {limit}")
        lows = [iv.lower for iv in self.factor.generation_intervals(k)]
        corners: list[tuple[Fraction, ...]] = [()]
        for _ in range(self.copies):
            corners = [c + (v,) for c in corners for v in lows]
        return corners


def product_for_dimension(a: float) -> ProductCantor:
    """Product Cantor set of total dimension a > 0.

    Uses the least number of copies N with a/N < 1, each copy a self-similar
    set of dimension a/N.
    """
    if not (isinstance(a, (int, float)) and math.isfinite(a)):
        raise ValueError(f"target dimension must be finite, got {a!r}; "
                         "infinite products have no finite construction")
    if a <= 0:
        raise ValueError(f"target dimension must be positive, got {a}")
    copies = int(math.floor(a)) + 1  # least N with a/N < 1
    return ProductCantor(scaling_for_dimension(a / copies), copies)


def uniform_perfectness_constant(cantor_set: RatioCantorSet) -> Fraction:
    """K = 2 / (1 - sup_i c_i): bounds every consecutive-length ratio."""
    return 2 / (1 - cantor_set.ratios.supremum())


@dataclass(frozen=True)
class AnnulusWitness:
    """Outcome of one annulus query at a sampled (center, radius)."""

    center: Fraction
    radius: Fraction
    kind: str  # "witness" | "vacuous" | "inconclusive"
    point: Optional[Fraction] = None
    distance: Optional[Fraction] = None


@dataclass
class PerfectnessReport:
    constant: Fraction
    depth: int
    results: list[AnnulusWitness]

    @property
    def conclusive(self) -> bool:
        return all(r.kind != "inconclusive" for r in self.results)

    @property
    def witness_count(self) -> int:
        return sum(1 for r in self.results if r.kind == "witness")

    @property
    def vacuous_count(self) -> int:
        return sum(1 for r in self.results if r.kind == "vacuous")

    def inconclusive_samples(self) -> list[AnnulusWitness]:
        return [r for r in self.results if r.kind == "inconclusive"]


def verify_uniform_perfectness(cantor_set: RatioCantorSet,
                               samples: Sequence[tuple[Fraction, Fraction]],
                               depth: int) -> PerfectnessReport:
    """For each (x, r) exhibit a set point in the annulus r/(4K) <= |x - a| < r,
    or recognise that the ball of radius r swallows the whole set.

    Centers must be endpoints of built generation intervals (hence provably in
    the set).  A sample where no witness exists among depth-``depth`` endpoints
    is reported inconclusive: deepen, never refute.
    """
    import bisect

    constant = uniform_perfectness_constant(cantor_set)
    eps = cantor_set.endpoints(depth)
    results: list[AnnulusWitness] = []
    for x, r in samples:
        x = Fraction(x)
        r = Fraction(r)
        if r <= 0:
            raise ValueError(f"radius must be positive, got {r}")
        i = bisect.bisect_left(eps, x)
        if i == len(eps) or eps[i] != x:
            raise ValueError(f"center {x} is not a built generation endpoint")
        if r > max(x, 1 - x):
            # ball contains [0, 1], hence the whole set: nothing to witness
            results.append(AnnulusWitness(x, r, "vacuous"))
            continue
        inner = r / (4 * constant)
        witness = None
        # right side [x + inner, x + r), then left side (x - r, x - inner]
        i = bisect.bisect_left(eps, x + inner)
        if i < len(eps) and eps[i] < x + r:
            witness = eps[i]
        else:
            j = bisect.bisect_right(eps, x - inner) - 1
            if j >= 0 and eps[j] > x - r:
                witness = eps[j]
        if witness is None:
            results.append(AnnulusWitness(x, r, "inconclusive"))
        else:
            results.append(AnnulusWitness(x, r, "witness", witness, abs(witness - x)))
    return PerfectnessReport(constant, depth, results)


def sample_perfectness_inputs(cantor_set: RatioCantorSet, count: int, depth: int,
                              rng) -> list[tuple[Fraction, Fraction]]:
    """Sampling policy: centers are random built endpoints, radii log-uniform
    between the depth-(depth-1) interval length and 1."""
    cantor_set.build(depth)
    log_lo = _log_fraction(cantor_set.generation_length(depth - 1))
    samples = []
    for _ in range(count):
        g = rng.randrange(0, depth + 1)
        eps = cantor_set.endpoints(g)
        x = eps[rng.randrange(len(eps))]
        r = Fraction(math.exp(rng.uniform(log_lo, 0.0)))
        samples.append((x, r))
    return samples
