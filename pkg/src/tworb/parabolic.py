"""Parabolic block data, the induction rank certificate, and oracles.

Two kinds of block decompositions appear:

* :class:`ParabolicShape`, from a composition of n: the flag stabilizer
  P = MN with block-diagonal mask s_M, strictly-upper mask s_N.
* :class:`AdaptedParabolic`, from a Jordan type: the (i, j) block grid of
  the standard representative, with masks for m, n and the excess space
  u_X that measures N_X\\N.

Induction samples Y in s_N from a seeded pool and certifies each sample
with an exact rank computation (equality of tangent spaces); certified
samples are never wrong, so sampling affects liveness only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fields import QuadraticExtensionModel
from .linalg import (TwistedEndo, bracket_system, mat_add, mat_rank,
                     mat_sigma)
from .orbits import JordanType, jordan_type_of, standard_representative

SAMPLING_BOUND = 101  # rational pool {1..B} * (1, sqrt(tau)); Schwartz-Zippel


class BadComposition(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class SupportViolation(ValueError):
    pass


class GenericityFailure(RuntimeError):
    """No sampled Y passed the rank certificate within the trial limit."""


# ---------------------------------------------------------------------------
# standard parabolic from a composition


@dataclass(frozen=True)
class ParabolicShape:
    composition: tuple[int, ...]
    n: int
    m_mask: frozenset
    n_mask: frozenset
    nbar_mask: frozenset

    @property
    def dim_F_sM(self) -> int:
        return 2 * len(self.m_mask)

    @property
    def dim_F_sN(self) -> int:
        return 2 * len(self.n_mask)

    @property
    def dim_F_sNbar(self) -> int:
        return 2 * len(self.nbar_mask)

    @property
    def p_mask(self) -> frozenset:
        return self.m_mask | self.n_mask


def standard_parabolic(comp) -> ParabolicShape:
    comp = tuple(int(c) for c in comp)
    if not comp or any(c < 1 for c in comp):
        raise BadComposition(f"composition parts must be >= 1: {comp}")
    n = sum(comp)
    block = []
    for b, size in enumerate(comp):
        block.extend([b] * size)
    m_mask, n_mask, nbar_mask = set(), set(), set()
    for a in range(n):
        for b in range(n):
            if block[a] == block[b]:
                m_mask.add((a, b))
            elif block[a] < block[b]:
                n_mask.add((a, b))
            else:
                nbar_mask.add((a, b))
    return ParabolicShape(comp, n, frozenset(m_mask), frozenset(n_mask),
                          frozenset(nbar_mask))


# ---------------------------------------------------------------------------
# the parabolic adapted to a Jordan type


@dataclass(frozen=True)
class AdaptedParabolic:
    """Block grid of the standard representative's basis.

    Groups are the (i, j) pieces, 1 <= i <= j <= r with d_j >= 1, in basis
    order (level i ascending, j descending inside a level); each group has
    size d_j.  The u_X condition on a pair source=(i, j), target=(i', j')
    is exactly: i - 1 > i', or i = i' + 1 and j < j'.
    """

    jordan_type: JordanType
    groups: tuple  # (i, j, offset, size)
    m_mask: frozenset
    n_mask: frozenset
    u_mask: frozenset

    @property
    def dim_F_m(self) -> int:
        return 2 * len(self.m_mask)

    @property
    def dim_F_n(self) -> int:
        return 2 * len(self.n_mask)

    @property
    def dim_F_uX(self) -> int:
        return 2 * len(self.u_mask)


def adapted_parabolic(t: JordanType) -> AdaptedParabolic:
    if t.n < 1:
        raise ValueError("adapted_parabolic needs n >= 1")
    d = t.multiplicities()
    groups = []
    offset = 0
    for i in range(1, t.r + 1):
        for j in range(t.r, i - 1, -1):
            if d[j] > 0:
                groups.append((i, j, offset, d[j]))
                offset += d[j]
    assert offset == t.n

    def positions(tgt, src):
        _, _, toff, tsize = tgt
        _, _, soff, ssize = src
        return [(toff + a, soff + b) for a in range(tsize)
                for b in range(ssize)]

    m_mask, n_mask, u_mask = set(), set(), set()
    for src in groups:
        i, j = src[0], src[1]
        for tgt in groups:
            ip, jp = tgt[0], tgt[1]
            if (i, j) == (ip, jp):
                m_mask.update(positions(tgt, src))
            elif i > ip or (i == ip and j < jp):
                n_mask.update(positions(tgt, src))
            if i >= 2 and (i - 1 > ip or (i == ip + 1 and j < jp)):
                u_mask.update(positions(tgt, src))
    return AdaptedParabolic(t, tuple(groups), frozenset(m_mask),
                            frozenset(n_mask), frozenset(u_mask))


def embed_m_x(ad: AdaptedParabolic, model: QuadraticExtensionModel,
              blocks: dict):
    """Embed (g_j)_j into M along the twisted diagonal.

    blocks maps j to a d_j x d_j matrix over E; group (i, j) receives
    sigma^(j-i)(g_j), which is what commuting with the representative
    through the identifications by its powers demands.
    """
    n = ad.jordan_type.n
    z = model.zero
    rows = [[z] * n for _ in range(n)]
    for (i, j, off, size) in ad.groups:
        g = blocks[j]
        for _ in range(j - i):
            g = mat_sigma(model, g)
        for a in range(size):
            for b in range(size):
                rows[off + a][off + b] = g[a][b]
    return tuple(tuple(r) for r in rows)


def n_x_dim_oracle(t: JordanType, model: QuadraticExtensionModel) -> int:
    """F-dimension of the centralizer of the representative inside n."""
    ad = adapted_parabolic(t)
    x = standard_representative(t, model)
    if not ad.n_mask:
        return 0
    return bracket_system(x, sorted(ad.n_mask)).kernel_dim_F()


# ---------------------------------------------------------------------------
# the rank certificate for induced orbits


def _check_support(endo: TwistedEndo, mask: frozenset, what: str):
    for a in range(endo.n):
        for b in range(endo.n):
            if endo.mat[a][b] and (a, b) not in mask:
                raise SupportViolation(
                    f"{what} has a nonzero entry at {(a, b)} outside its mask")


def m_orbit_tangent_dim(shape: ParabolicShape, x: TwistedEndo) -> int:
    """dim_F of the image of m_P under Z -> [Z, X]."""
    return bracket_system(x, sorted(shape.m_mask)).rank_F()


def rank_criterion(shape: ParabolicShape, x: TwistedEndo,
                   y: TwistedEndo) -> bool:
    """Tangent-space equality [p, X+Y] = [m_P, X] + s_N, by exact ranks."""
    _check_support(x, shape.m_mask, "X")
    _check_support(y, shape.n_mask, "Y")
    d_orbit = m_orbit_tangent_dim(shape, x) + shape.dim_F_sN
    w = TwistedEndo(x.model, x.n, mat_add(x.mat, y.mat))
    return bracket_system(w, sorted(shape.p_mask)).rank_F() == d_orbit


# ---------------------------------------------------------------------------
# sampling


def sample_s_n(shape: ParabolicShape, model: QuadraticExtensionModel,
               rng: random.Random) -> TwistedEndo:
    """Y supported on s_N with entries from the deterministic pool."""
    n = shape.n
    z = model.zero
    rows = [[z] * n for _ in range(n)]
    for (a, b) in sorted(shape.n_mask):
        if model.kind == "rational":
            rows[a][b] = model.el(rng.randint(1, SAMPLING_BOUND),
                                  rng.randint(1, SAMPLING_BOUND))
        else:
            rows[a][b] = model.random_element(rng)
    return TwistedEndo(model, n, tuple(tuple(r) for r in rows))


def blockwise_representative(shape: ParabolicShape, m_types,
                             model: QuadraticExtensionModel) -> TwistedEndo:
    m_types = list(m_types)
    if len(m_types) != len(shape.composition):
        raise ShapeMismatch("one Jordan type per composition block")
    n = shape.n
    z = model.zero
    rows = [[z] * n for _ in range(n)]
    off = 0
    for size, t in zip(shape.composition, m_types):
        if t.n != size:
            raise ShapeMismatch(f"type {t} does not partition block of {size}")
        rep = standard_representative(t, model)
        for a in range(size):
            for b in range(size):
                rows[off + a][off + b] = rep.mat[a][b]
        off += size
    return TwistedEndo(model, n, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class InductionReport:
    composition: tuple[int, ...]
    m_types: tuple[JordanType, ...]
    induced_type: JordanType
    trials_used: int
    rejected: int


def induce_orbit_report(shape: ParabolicShape, m_types,
                        model: QuadraticExtensionModel, *, seed: int = 0,
                        max_trials: int = 40) -> InductionReport:
    """Like :func:`induce_orbit` but keeps the trial statistics."""
    m_types = tuple(m_types)
    x = blockwise_representative(shape, m_types, model)
    rng = random.Random(seed)
    rejected = 0
    for trial in range(1, max_trials + 1):
        y = sample_s_n(shape, model, rng)
        if rank_criterion(shape, x, y):
            w = TwistedEndo(model, shape.n, mat_add(x.mat, y.mat))
            return InductionReport(shape.composition, m_types,
                                   jordan_type_of(w), trial, rejected)
        rejected += 1
    raise GenericityFailure(
        f"no certified sample in {max_trials} trials for {shape.composition}")


def induce_orbit(shape: ParabolicShape, m_types,
                 model: QuadraticExtensionModel, *, seed: int = 0,
                 max_trials: int = 40) -> JordanType:
    """Jordan type of the induced orbit, from a certified generic sample."""
    return induce_orbit_report(shape, m_types, model, seed=seed,
                               max_trials=max_trials).induced_type


@dataclass
class PorbReport:
    """Outcome of sampling the single-P-orbit consequences."""

    composition: tuple[int, ...]
    m_types: tuple[JordanType, ...]
    trials: int
    certified_trials: int = 0
    failures: int = 0
    tangent_dim_checks: int = 0
    induced_type: JordanType | None = None
    constant_type: bool = True
    types_seen: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.certified_trials > 0 and self.constant_type
                and self.tangent_dim_checks == self.certified_trials)

    def to_json(self) -> dict:
        return {
            "composition": list(self.composition),
            "m_types": [t.to_json() for t in self.m_types],
            "trials": self.trials,
            "certified_trials": self.certified_trials,
            "failures": self.failures,
            "tangent_dim_checks": self.tangent_dim_checks,
            "induced_type": (self.induced_type.to_json()
                             if self.induced_type else None),
            "constant_type": self.constant_type,
        }


def verify_porb(shape: ParabolicShape, m_types,
                model: QuadraticExtensionModel, *, trials: int = 20,
                seed: int = 0) -> PorbReport:
    """Sample s_N; every certified sample must hit one Jordan type and
    satisfy the tangent-dimension equality."""
    m_types = tuple(m_types)
    x = blockwise_representative(shape, m_types, model)
    rng = random.Random(seed)
    report = PorbReport(shape.composition, m_types, trials)
    m_dim = m_orbit_tangent_dim(shape, x)
    for _ in range(trials):
        y = sample_s_n(shape, model, rng)
        w = TwistedEndo(model, shape.n, mat_add(x.mat, y.mat))
        rank = bracket_system(w, sorted(shape.p_mask)).rank_F()
        if rank != m_dim + shape.dim_F_sN:
            report.failures += 1
            continue
        report.certified_trials += 1
        report.tangent_dim_checks += 1  # equality re-stated by the rank
        t = jordan_type_of(w)
        if t not in report.types_seen:
            report.types_seen.append(t)
    if report.certified_trials:
        report.constant_type = len(report.types_seen) == 1
        report.induced_type = report.types_seen[0]
    return report


# ---------------------------------------------------------------------------
# flag point-count oracle (tests the stable-flag reading of B_Y)


def _echelon(vectors):
    """Reduced echelon basis of the span; canonical, hence hashable."""
    basis = []  # (lead column, row) with rows as lists of ExtElement
    for row in vectors:
        cur = list(row)
        for lead, b in basis:
            if cur[lead]:
                f = cur[lead]
                cur = [x - f * y for x, y in zip(cur, b)]
        leads = [j for j, x in enumerate(cur) if x]
        if not leads:
            continue
        lead = leads[0]
        inv = cur[lead].inverse()
        basis.append((lead, [x * inv for x in cur]))
        basis.sort(key=lambda lb: lb[0])
        for k, (lk, bk) in enumerate(basis):
            for lo, bo in basis:
                if lo != lk and bk[lo]:
                    f = bk[lo]
                    bk = [x - f * y for x, y in zip(bk, bo)]
            basis[k] = (lk, bk)
    return tuple(tuple(b) for _, b in basis)


def _span_contains(basis_rows, vec) -> bool:
    if not basis_rows:
        return all(not x for x in vec)
    base = tuple(tuple(r) for r in basis_rows)
    return mat_rank(base) == mat_rank(base + (tuple(vec),))


def flag_fixed_count(y: TwistedEndo) -> int:
    """Number of complete E-flags with every step stable under v -> Y sigma(v).

    Exhaustive enumeration; needs the finite model and small n.  This is
    the point-count oracle behind the Springer-dimension formula and the
    stable-flag reading of the fixed-flag condition.
    """
    model, n = y.model, y.n
    if model.kind != "finite":
        raise ValueError("flag counting needs the finite model")
    if n == 1:
        return 1
    import itertools as it

    elems = list(model.elements())

    def apply_x(vec):
        sv = [model.sigma(v) for v in vec]
        return [sum((y.mat[i][j] * sv[j] for j in range(1, n)),
                    start=y.mat[i][0] * sv[0]) for i in range(n)]

    def all_vectors():
        for combo in it.product(range(len(elems)), repeat=n):
            yield [elems[i] for i in combo]

    def is_stable(rows):
        return all(_span_contains(rows, apply_x(list(b))) for b in rows)

    def count_from(rows, dim):
        if dim == n - 1:
            return 1
        total = 0
        seen = set()
        for w in all_vectors():
            if _span_contains(rows, w):
                continue
            key = _echelon(list(rows) + [w])
            if key in seen:
                continue
            seen.add(key)
            if is_stable(key):
                total += count_from(key, dim + 1)
        return total

    total = 0
    seen = set()
    for w in all_vectors():
        if all(not x for x in w):
            continue
        key = _echelon([w])
        if key in seen:
            continue
        seen.add(key)
        if is_stable(key):
            total += count_from(key, 1)
    return total


def richardson_dual(comp) -> JordanType:
    """Dual of the sorted composition; the Richardson cross-check rule."""
    return JordanType(tuple(sorted(comp, reverse=True))).dual()
