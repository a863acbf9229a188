"""Weighted ordinal ordering cones.

An outcome vector counts, per quality category 1..K (1 best, K worst), how
much of each category a decision uses.  Smaller is better in every category.
A pair of marginal weight vectors (omega, gamma), each of length K-1,
declares how adjacent categories trade off:

* omega_i:  giving up one unit of category i+1 is worth at most omega_i
  extra units of category i,
* gamma_i:  giving up one unit of category i is worth at most gamma_i extra
  units of category i+1.

Weights are admissible when omega_i >= 0, gamma_i >= 0 and
omega_i * gamma_i <= 1 for every i.  The induced dominance cone is spanned
by 2(K-1) rays (one `u` and one `g` ray per adjacent pair) and, when every
product omega_i * gamma_i is strictly below one, the cone is pointed and has
an explicit facet description: each facet normal is a componentwise product
over per-pair factors, one selection of `u` or `g` per pair.  The dual cone
consists of the consistent per-category disutility vectors nu
(nonnegative, omega_i * nu_i <= nu_{i+1} and nu_i >= gamma_i * nu_{i+1}).

A product omega_i * gamma_i = 1 pins nu_{i+1} to omega_i * nu_i, which is
the same as merging categories i and i+1 after rescaling.  merge_degenerate
performs that reduction and returns the linear map that carries outcome
vectors into the merged space.

Everything here is exact rational arithmetic; see :mod:`ordcone.exactnum`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from ordcone.exactnum import (
    Mat,
    Vec,
    identity,
    is_zero,
    mat_mul,
    normalize_ray,
    rank,
    rational,
    vec,
    zeros,
)


class ConeError(ValueError):
    """Base class for weight and cone errors."""


class NegativeWeight(ConeError):
    """A marginal weight is negative."""

    def __init__(self, name: str, index: int, value: Fraction) -> None:
        self.name = name
        self.index = index
        super().__init__(f"{name}[{index}] = {value} is negative")


class ProductExceedsOne(ConeError):
    """omega_i * gamma_i > 1, outside the admissible weight set."""

    def __init__(self, index: int, product: Fraction) -> None:
        self.index = index
        super().__init__(f"omega[{index}] * gamma[{index}] = {product} exceeds one")


class NotPointed(ConeError):
    """Operation requires a pointed cone (all products strictly below one)."""


class NothingToMerge(ConeError):
    """merge_degenerate was called on weights without degenerate pairs."""


class FormulaInapplicable(ConeError):
    """The closed-form facet count needs strictly positive omega weights."""


class SpecialCaseMismatch(ConeError):
    """Weights do not satisfy the prerequisites of the requested special case."""


@dataclass(frozen=True)
class Weights:
    """Admissible marginal weights for K ordered categories.

    `degenerate` lists the 1-based pair indices i with
    omega_i * gamma_i = 1.  The cone is pointed exactly when the list is
    empty.  K = 1 (no pairs at all) is allowed; it arises when degenerate
    pairs are merged away and is trivially pointed.
    """

    k: int
    omega: Vec
    gamma: Vec
    degenerate: tuple[int, ...]

    @property
    def pointed(self) -> bool:
        return not self.degenerate

    @property
    def classification(self) -> str:
        return "pointed" if self.pointed else "degenerate"


def classify_weights(
    k: int,
    omega: Sequence[Fraction | int | str],
    gamma: Sequence[Fraction | int | str],
) -> Weights:
    """Validate a weight pair and record its degenerate indices.

    Raises NegativeWeight or ProductExceedsOne (with the offending 1-based
    index) for inadmissible input.
    """
    if k < 1:
        raise ConeError(f"category count must be at least 1, got {k}")
    om = vec(omega)
    ga = vec(gamma)
    if len(om) != k - 1 or len(ga) != k - 1:
        raise ConeError(
            f"expected {k - 1} omega and gamma entries for K={k}, "
            f"got {len(om)} and {len(ga)}"
        )
    for name, values in (("omega", om), ("gamma", ga)):
        for i, value in enumerate(values, start=1):
            if value < 0:
                raise NegativeWeight(name, i, value)
    degenerate = []
    for i in range(1, k):
        product = om[i - 1] * ga[i - 1]
        if product > 1:
            raise ProductExceedsOne(i, product)
        if product == 1:
            degenerate.append(i)
    return Weights(k=k, omega=om, gamma=ga, degenerate=tuple(degenerate))


@dataclass(frozen=True)
class ConeVRep:
    """Spanning rays of a dominance cone, in fixed column order.

    Columns are u^1..u^{K-1} followed by g^1..g^{K-1}.  `extreme_mask` is
    None until mark_extreme_rays has run; afterwards it flags the columns
    that are extreme rays of the spanned cone.
    """

    k: int
    columns: tuple[Vec, ...]
    labels: tuple[str, ...]
    extreme_mask: tuple[bool, ...] | None = None

    @property
    def matrix(self) -> Mat:
        """K x 2(K-1) matrix whose columns are the spanning rays."""
        return tuple(
            tuple(col[i] for col in self.columns) for i in range(self.k)
        )


@dataclass(frozen=True)
class ConeHRep:
    """Facet description of a pointed dominance cone.

    Row j is an inward facet normal; `selections` records, per row, the
    u/g choice per adjacent pair that produced it (None for cones built
    directly from a matrix, such as the Pareto cone).  `matrix_rank` is the
    exact rank of the row matrix; the represented cone is pointed exactly
    when it equals k.
    """

    k: int
    rows: Mat
    selections: tuple[tuple[str, ...], ...] | None
    matrix_rank: int

    @property
    def pointed(self) -> bool:
        return self.matrix_rank == self.k


def spanning_rays(weights: Weights) -> ConeVRep:
    """The 2(K-1) spanning rays of the dominance cone, u block then g block."""
    k = weights.k
    columns: list[Vec] = []
    labels: list[str] = []
    for i in range(1, k):
        ray = [Fraction(0)] * k
        ray[i - 1] = -weights.omega[i - 1]
        ray[i] = Fraction(1)
        columns.append(tuple(ray))
        labels.append(f"u{i}")
    for i in range(1, k):
        ray = [Fraction(0)] * k
        ray[i - 1] = Fraction(1)
        ray[i] = -weights.gamma[i - 1]
        columns.append(tuple(ray))
        labels.append(f"g{i}")
    return ConeVRep(k=k, columns=tuple(columns), labels=tuple(labels))


def _prune_parallel(
    rows: list[tuple[Vec, Fraction]],
) -> list[tuple[Vec, Fraction]]:
    """Collapse inequality rows with proportional coefficients, keeping the tightest."""
    best: dict[Vec, Fraction] = {}
    order: list[Vec] = []
    for coeffs, rhs in rows:
        scale = None
        for c in coeffs:
            if c != 0:
                scale = abs(c)
                break
        if scale is None:
            key = coeffs
        else:
            key = tuple(c / scale for c in coeffs)
            rhs = rhs / scale
        if key not in best:
            best[key] = rhs
            order.append(key)
        elif rhs < best[key]:
            best[key] = rhs
    return [(key, best[key]) for key in order]


def _nonneg_combination_feasible(target: Vec, columns: Sequence[Vec]) -> bool:
    """Exact feasibility of target = sum_j lambda_j * columns[j], lambda >= 0.

    Solved by Fourier-Motzkin elimination on the system
    {B lam <= t, -B lam <= -t, -lam <= 0}; the tiny dimensions here
    (at most 2(K-1) unknowns) keep the elimination cheap.
    """
    m = len(columns)
    if m == 0:
        return is_zero(target)
    rows: list[tuple[Vec, Fraction]] = []
    for i in range(len(target)):
        coeffs = tuple(col[i] for col in columns)
        rows.append((coeffs, target[i]))
        rows.append((tuple(-c for c in coeffs), -target[i]))
    for j in range(m):
        unit = tuple(Fraction(-1) if jj == j else Fraction(0) for jj in range(m))
        rows.append((unit, Fraction(0)))
    for var in range(m):
        pos = [(c, b) for c, b in rows if c[var] > 0]
        neg = [(c, b) for c, b in rows if c[var] < 0]
        kept = [(c, b) for c, b in rows if c[var] == 0]
        for cp, bp in pos:
            for cn, bn in neg:
                mult_p = -cn[var]
                mult_n = cp[var]
                coeffs = tuple(mult_n * x + mult_p * y for x, y in zip(cn, cp))
                kept.append((coeffs, mult_n * bn + mult_p * bp))
        rows = _prune_parallel(kept)
    return all(rhs >= 0 for _, rhs in rows)


def mark_extreme_rays(vrep: ConeVRep) -> ConeVRep:
    """Flag the columns that are extreme rays of the spanned cone.

    A column is marked not extreme when it is a nonnegative combination of
    the remaining columns.  Columns that repeat an earlier column (the same
    ray can appear in both blocks when omega_i = 0 and gamma_{i+1} = 0) are
    unmarked as duplicates; the first occurrence is tested against the
    columns outside its duplicate class, so exactly one representative of a
    needed direction stays marked.
    """
    columns = vrep.columns
    canon = [normalize_ray(col) for col in columns]
    first_index: dict[Vec, int] = {}
    for idx, c in enumerate(canon):
        first_index.setdefault(c, idx)
    mask: list[bool] = []
    for idx, col in enumerate(columns):
        if first_index[canon[idx]] != idx:
            mask.append(False)
            continue
        others = [columns[j] for j in range(len(columns)) if canon[j] != canon[idx]]
        mask.append(not _nonneg_combination_feasible(col, others))
    return replace(vrep, extreme_mask=tuple(mask))


def facet_normal(selection: Sequence[str], weights: Weights) -> Vec:
    """Inward facet normal for one u/g selection, as a componentwise product.

    For pair i the factor on component c is omega_i when `u` is selected and
    c > i, gamma_i when `g` is selected and c <= i, and 1 otherwise.
    """
    k = weights.k
    if len(selection) != k - 1:
        raise ConeError(f"selection needs {k - 1} entries, got {len(selection)}")
    entries: list[Fraction] = []
    for c in range(1, k + 1):
        product = Fraction(1)
        for i in range(1, k):
            choice = selection[i - 1]
            if choice == "u":
                if c > i:
                    product *= weights.omega[i - 1]
            elif choice == "g":
                if c <= i:
                    product *= weights.gamma[i - 1]
            else:
                raise ConeError(f"selection entries must be 'u' or 'g', got {choice!r}")
        entries.append(product)
    return tuple(entries)


def facet_matrix(weights: Weights) -> ConeHRep:
    """All facet normals of a pointed cone, one row per distinct facet.

    Selections are enumerated in binary order (u = 0, g = 1, pair index 1
    least significant).  Rows that are identically zero are dropped; rows
    proportional to an earlier row keep only the first occurrence.
    """
    if not weights.pointed:
        raise NotPointed(
            f"facet description requires a pointed cone; degenerate pairs {weights.degenerate}"
        )
    k = weights.k
    rows: list[Vec] = []
    selections: list[tuple[str, ...]] = []
    seen: set[Vec] = set()
    for code in range(2 ** (k - 1)):
        selection = tuple(
            "g" if (code >> i) & 1 else "u" for i in range(k - 1)
        )
        normal = facet_normal(selection, weights)
        if is_zero(normal):
            continue
        canonical = normalize_ray(normal)
        if canonical in seen:
            continue
        seen.add(canonical)
        rows.append(normal)
        selections.append(selection)
    matrix = tuple(rows)
    return ConeHRep(
        k=k, rows=matrix, selections=tuple(selections), matrix_rank=rank(matrix)
    )


def facet_count(weights: Weights) -> int:
    """Closed-form facet count for pointed weights with every omega_i > 0.

    With J = {j_1 < ... < j_l} the set of pair indices where gamma is zero,
    the count is 2^(K-1-l) + sum_k 2^(K-1-j_k-(l-k)).  All gamma positive
    gives the full 2^(K-1); gamma identically zero gives K.
    """
    if not weights.pointed:
        raise NotPointed("facet count requires a pointed cone")
    for i, value in enumerate(weights.omega, start=1):
        if value == 0:
            raise FormulaInapplicable(f"omega[{i}] = 0; count formula needs omega > 0")
    k = weights.k
    zero_positions = [i for i in range(1, k) if weights.gamma[i - 1] == 0]
    ell = len(zero_positions)
    total = 2 ** (k - 1 - ell)
    for pos, j in enumerate(zero_positions, start=1):
        total += 2 ** (k - 1 - j - (ell - pos))
    return total


def representation_matrix(weights: Weights) -> Mat:
    """K x K matrix whose rows all lie in the dual cone.

    Entry (i, j) is the product omega_i * ... * omega_{j-1} above the
    diagonal, 1 on it, and gamma_j * ... * gamma_{i-1} below.  The matrix
    has full rank exactly when the weights are pointed, and its rows evaluate
    outcome vectors under K canonical consistent disutility profiles.
    """
    k = weights.k
    rows: list[Vec] = []
    for i in range(1, k + 1):
        row: list[Fraction] = []
        for j in range(1, k + 1):
            if i < j:
                product = Fraction(1)
                for ell in range(i, j):
                    product *= weights.omega[ell - 1]
            elif i == j:
                product = Fraction(1)
            else:
                product = Fraction(1)
                for ell in range(j, i):
                    product *= weights.gamma[ell - 1]
            row.append(product)
        rows.append(tuple(row))
    return tuple(rows)


def dual_contains(weights: Weights, nu: Sequence[Fraction | int | str]) -> bool:
    """Is nu a consistent nonnegative disutility vector for these weights?

    Requires nu >= 0 with omega_i * nu_i <= nu_{i+1} and
    nu_i >= gamma_i * nu_{i+1} for every adjacent pair.
    """
    values = vec(nu)
    if len(values) != weights.k:
        raise ConeError(f"expected {weights.k} components, got {len(values)}")
    if any(value < 0 for value in values):
        return False
    for i in range(1, weights.k):
        if weights.omega[i - 1] * values[i - 1] > values[i]:
            return False
        if values[i - 1] < weights.gamma[i - 1] * values[i]:
            return False
    return True


_SPECIAL_KINDS = (
    "pareto",
    "standard_ordinal",
    "gamma_zero",
    "omega_zero",
    "k2",
    "weighted_sum",
)


def special_matrix(kind: str, weights: Weights) -> Mat:
    """Closed-form dominance matrix for a named special weight family.

    Raises SpecialCaseMismatch when the weights do not satisfy the family's
    defining conditions.
    """
    k = weights.k
    if kind == "pareto":
        if any(v != 0 for v in weights.omega) or any(v != 0 for v in weights.gamma):
            raise SpecialCaseMismatch("pareto case needs omega = gamma = 0")
        return identity(k)
    if kind == "standard_ordinal":
        if any(v != 1 for v in weights.omega) or any(v != 0 for v in weights.gamma):
            raise SpecialCaseMismatch("standard ordinal case needs omega = 1, gamma = 0")
        return _upper_cumulative(weights)
    if kind == "gamma_zero":
        if any(v != 0 for v in weights.gamma):
            raise SpecialCaseMismatch("gamma-zero case needs gamma = 0")
        return _upper_cumulative(weights)
    if kind == "omega_zero":
        if any(v != 0 for v in weights.omega):
            raise SpecialCaseMismatch("omega-zero case needs omega = 0")
        return _lower_cumulative(weights)
    if kind == "k2":
        if k != 2:
            raise SpecialCaseMismatch("k2 case needs exactly two categories")
        return (
            (Fraction(1), weights.omega[0]),
            (weights.gamma[0], Fraction(1)),
        )
    if kind == "weighted_sum":
        if any(
            weights.omega[i] * weights.gamma[i] != 1 for i in range(k - 1)
        ):
            raise SpecialCaseMismatch(
                "weighted-sum case needs omega_i * gamma_i = 1 for every pair"
            )
        row: list[Fraction] = [Fraction(1)]
        for i in range(1, k):
            row.append(row[-1] * weights.omega[i - 1])
        return (tuple(row),)
    raise SpecialCaseMismatch(
        f"unknown special case {kind!r}; expected one of {_SPECIAL_KINDS}"
    )


def _upper_cumulative(weights: Weights) -> Mat:
    """Upper-triangular matrix with cumulative omega products above the diagonal."""
    k = weights.k
    rows: list[Vec] = []
    for i in range(1, k + 1):
        row = [Fraction(0)] * k
        row[i - 1] = Fraction(1)
        for j in range(i + 1, k + 1):
            row[j - 1] = row[j - 2] * weights.omega[j - 2]
        rows.append(tuple(row))
    return tuple(rows)


def _lower_cumulative(weights: Weights) -> Mat:
    """Lower-triangular matrix with cumulative gamma products below the diagonal."""
    k = weights.k
    rows: list[Vec] = []
    for i in range(1, k + 1):
        row = [Fraction(0)] * k
        row[i - 1] = Fraction(1)
        for j in range(i - 1, 0, -1):
            row[j - 1] = row[j] * weights.gamma[j - 1]
        rows.append(tuple(row))
    return tuple(rows)


def merge_degenerate(weights: Weights) -> tuple[Weights, Mat]:
    """Merge away degenerate pairs; return the reduced weights and the lift map.

    A degenerate pair d (omega_d * gamma_d = 1) forces every consistent
    disutility vector to satisfy nu_{d+1} = omega_d * nu_d, so categories d
    and d+1 carry a single degree of freedom.  The merge folds category d+1
    into d with conversion factor omega_d; the returned lift is the K' x K
    matrix carrying original outcome vectors into the merged space
    (c'_d = c_d + omega_d * c_{d+1}, other components pass through).  Merges
    repeat until no degenerate pair remains, so the result is always pointed.
    """
    if weights.pointed:
        raise NothingToMerge("no degenerate pair to merge")
    current = weights
    lift = identity(weights.k)
    while current.degenerate:
        d = current.degenerate[0]
        k = current.k
        step_rows: list[Vec] = []
        for j in range(1, k):
            row = [Fraction(0)] * k
            if j < d:
                row[j - 1] = Fraction(1)
            elif j == d:
                row[d - 1] = Fraction(1)
                row[d] = current.omega[d - 1]
            else:
                row[j] = Fraction(1)
            step_rows.append(tuple(row))
        new_omega: list[Fraction] = []
        new_gamma: list[Fraction] = []
        for i in range(1, k - 1):
            if i < d:
                new_omega.append(current.omega[i - 1])
                new_gamma.append(current.gamma[i - 1])
            elif i == d:
                new_omega.append(current.omega[d - 1] * current.omega[d])
                new_gamma.append(current.gamma[d] / current.omega[d - 1])
            else:
                new_omega.append(current.omega[i])
                new_gamma.append(current.gamma[i])
        current = classify_weights(k - 1, new_omega, new_gamma)
        lift = mat_mul(tuple(step_rows), lift)
    return current, lift
