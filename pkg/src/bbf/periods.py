"""Period-map semantics on top of the lattice layer.

Membership tests for the two period images (single positive classes, and
positive oriented 3-spaces whose integral orthogonal complement avoids the
wall classes), twistor families of a class triple, equivalence of triples,
and randomized fiber/connectivity experiments over the orthogonal
complement of a fixed positive class.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .enumeration import NormTargetSet, WallReport, mbm_candidates_in_complement
from .exactlinalg import (
    IntVec,
    RatVec,
    Rational,
    clear_denominators,
    content,
    diagonalize_symmetric,
    dot,
    gram_restrict,
    kernel_int,
    lll_gram,
    mat_vec,
    rref,
    sign_normalize,
    solve_in_row_space,
    vec_rat,
    vectors_of_norms,
)
from .lattice import (
    BBFLattice,
    InvariantViolation,
    OrientationRelation,
    OrientedPositiveSubspace,
    SignatureError,
    orientation_relation,
)


@dataclass(frozen=True)
class HKTripleClasses:
    """An ordered triple of pairwise orthogonal positive classes of equal
    norm; its span is an oriented positive 3-space."""

    lattice: BBFLattice
    x: RatVec
    y: RatVec
    z: RatVec

    def __init__(
        self,
        lattice: BBFLattice,
        x: Sequence[Rational],
        y: Sequence[Rational],
        z: Sequence[Rational],
    ):
        x, y, z = vec_rat(x), vec_rat(y), vec_rat(z)
        for u, v, name in ((x, y, "x,y"), (y, z, "y,z"), (x, z, "x,z")):
            val = lattice.inner(u, v)
            if val != 0:
                raise InvariantViolation("triple must be orthogonal; q(%s) = %s" % (name, val))
        qx, qy, qz = lattice.q(x), lattice.q(y), lattice.q(z)
        if not (qx == qy == qz):
            raise InvariantViolation(
                "triple must have equal norms, got %s, %s, %s" % (qx, qy, qz)
            )
        if qx <= 0:
            raise InvariantViolation("triple norm must be positive, got %s" % (qx,))
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    @property
    def norm(self) -> Rational:
        return self.lattice.q(self.x)

    def span(self) -> OrientedPositiveSubspace:
        return OrientedPositiveSubspace(self.lattice, (self.x, self.y, self.z))


@dataclass(frozen=True)
class TwistorDirection:
    """A projective direction (a : b : c); unnormalized on purpose, since
    unit rational directions are sparse and the induced period plane only
    depends on the line through a x + b y + c z."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a: Rational, b: Rational, c: Rational):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if a == b == c == 0:
            raise InvariantViolation("twistor direction must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class TwistorFiber:
    """The classes attached to one member of a twistor family: the Kahler
    direction omega and the oriented period plane orthogonal to it inside
    the triple's 3-space."""

    omega: RatVec
    plane: OrientedPositiveSubspace


def in_symplectic_period_image(lattice: BBFLattice, v: Sequence[Rational]) -> bool:
    """Period-image test for single classes: q(v, v) > 0, nothing else."""
    return lattice.q(v) > 0


@dataclass(frozen=True)
class PeriodImageResult:
    in_image: bool
    witnesses: tuple[WallReport, ...]

    def __bool__(self) -> bool:
        return self.in_image


def in_hk_period_image(
    lattice: BBFLattice,
    w: OrientedPositiveSubspace | Sequence[Sequence[Rational]],
    norms: NormTargetSet | Iterable[int],
) -> PeriodImageResult:
    """A positive oriented 3-space is in the image exactly when its
    integral orthogonal complement carries no class with norm in the
    target set; the offending classes are returned as witnesses."""
    if isinstance(w, OrientedPositiveSubspace):
        if w.dim != 3:
            raise InvariantViolation("period-image test needs a 3-dimensional subspace")
        rows: Sequence[Sequence[Rational]] = w.basis
    else:
        rows = [vec_rat(r) for r in w]
        if len(rows) != 3:
            raise InvariantViolation("period-image test needs exactly 3 basis rows")
    witnesses = mbm_candidates_in_complement(lattice, rows, norms)
    return PeriodImageResult(in_image=not witnesses, witnesses=tuple(witnesses))


def forgetful_map(triple: HKTripleClasses) -> RatVec:
    """Project a triple to its first class."""
    return triple.x


def _cyclic_orthogonal_frame(
    d: tuple[Fraction, Fraction, Fraction]
) -> tuple[IntVec, IntVec]:
    """Primitive integer basis (p1, p2) of the Euclidean orthogonal of d in
    3-space, oriented so that (d, p1, p2) is positively oriented, and
    reducing to the literal cyclic axes when d is a coordinate direction."""
    j = next(i for i in range(3) if d[i] != 0)
    nn = d[0] * d[0] + d[1] * d[1] + d[2] * d[2]

    def unit(k: int) -> list[Fraction]:
        return [Fraction(1) if i == k else Fraction(0) for i in range(3)]

    e1 = unit((j + 1) % 3)
    e2 = unit((j + 2) % 3)
    p1 = [a - (d[(j + 1) % 3] / nn) * b for a, b in zip(e1, d)]
    dp = sum(a * b for a, b in zip(e2, p1))
    pp = sum(a * a for a in p1)
    p2 = [a - (d[(j + 2) % 3] / nn) * b - (dp / pp) * c for a, b, c in zip(e2, d, p1)]
    p1i = clear_denominators(p1)
    p2i = clear_denominators(p2)
    if d[j] < 0:
        p1i, p2i = p2i, p1i
    return p1i, p2i


def twistor_member(triple: HKTripleClasses, direction: TwistorDirection) -> TwistorFiber:
    """The family member in direction (a : b : c): omega = a x + b y + c z
    and the oriented plane orthogonal to omega inside the triple's span,
    with (omega, plane) matching the span's orientation.

    The coordinate directions recover the three defining Kahler classes and
    their complementary planes: direction (1,0,0) gives (x, span(y, z)).
    """
    d = direction.coords()
    lat = triple.lattice
    frame = (triple.x, triple.y, triple.z)

    def combine(coeffs: Sequence[Rational]) -> RatVec:
        return vec_rat(
            [
                sum(Fraction(c) * Fraction(col) for c, col in zip(coeffs, cols))
                for cols in zip(*frame)
            ]
        )

    omega = combine(d)
    p1, p2 = _cyclic_orthogonal_frame(d)
    plane = OrientedPositiveSubspace(lat, (combine(p1), combine(p2)))
    return TwistorFiber(omega=omega, plane=plane)


def hk_equivalence(t1: HKTripleClasses, t2: HKTripleClasses) -> bool:
    """Triples are equivalent when they span the same oriented 3-space:
    any two orthogonal equal-norm oriented frames of that space differ by a
    rotation, and the norm ratio is the free overall scaling."""
    if t1.lattice.gram != t2.lattice.gram:
        return False
    return (
        orientation_relation(t1.span(), t2.span())
        is OrientationRelation.SAME_ORIENTED_SUBSPACE
    )


# ---------------------------------------------------------------------------
# fiber sampling over the orthogonal complement of a fixed positive class
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberPoint:
    """A point of the fiber over x: an oriented positive 2-plane inside the
    orthogonal complement of x."""

    x: RatVec
    plane: OrientedPositiveSubspace

    def __init__(self, x: Sequence[Rational], plane: OrientedPositiveSubspace):
        x = vec_rat(x)
        for row in plane.basis:
            val = plane.lattice.inner(x, row)
            if val != 0:
                raise InvariantViolation(
                    "fiber plane must be orthogonal to the base class; q = %s" % (val,)
                )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "plane", plane)


@dataclass(frozen=True)
class FiberSample:
    point: FiberPoint
    accepted: bool
    witnesses: tuple[WallReport, ...]


@dataclass(frozen=True)
class ConnectivityReport:
    pairs_tested: int
    paths_found: int
    wall_hits: int
    planes_sampled: int
    geometric_rejections: int
    path_retries: int


class _FiberFrame:
    """Precomputed exact frame for all fiber work over one positive x:
    an LLL-improved integral basis of the complement of x, the restricted
    Gram, and a deterministic pair of orthogonal positive seed vectors used
    to aim random plane draws into the (thin) positive cone."""

    def __init__(self, lattice: BBFLattice, x: Sequence[Rational], norms: NormTargetSet):
        p, nneg = lattice.signature()
        if p != 3:
            raise SignatureError(
                "fiber experiments need ambient signature (3, k); got (%d, %d)" % (p, nneg)
            )
        x = vec_rat(x)
        qx = lattice.q(x)
        if qx <= 0:
            raise InvariantViolation("base class must be positive, q(x,x) = %s" % (qx,))
        self.lattice = lattice
        self.x = x
        n = lattice.rank
        x_int = clear_denominators(x)
        constraint = [int(c) for c in mat_vec(lattice.gram, x_int)]
        basis = kernel_int([constraint], canonical=False)
        # improve coordinates: Euclidean LLL keeps later Gram entries small
        euclid = [[dot(r1, r2) for r2 in basis] for r1 in basis]
        u, _ = lll_gram(euclid)
        m = len(basis)
        self.basis = [
            [sum(u[i][k] * basis[k][j] for k in range(m)) for j in range(n)]
            for i in range(m)
        ]
        self.gram_n = [
            [int(v) for v in row] for row in gram_restrict(self.basis, lattice.gram)
        ]
        self.dim = m
        self.targets = [-t for t in norms.norms]
        self.seeds = self._seed_pair()

    # -- coordinates ---------------------------------------------------------

    def to_ambient(self, coeffs: Sequence[int]) -> IntVec:
        n = self.lattice.rank
        return tuple(
            sum(coeffs[i] * self.basis[i][j] for i in range(self.dim)) for j in range(n)
        )

    def to_frame(self, vec: Sequence[Rational]) -> list[int]:
        sol = solve_in_row_space(self.basis, vec)
        if sol is None or any(c.denominator != 1 for c in sol):
            raise InvariantViolation("vector is not an integral class orthogonal to x")
        return [int(c) for c in sol]

    # -- seed construction ----------------------------------------------------

    def _seed_pair(self) -> tuple[list[int], list[int]]:
        """Two orthogonal positive integer vectors in the complement of x,
        found by exact diagonalization: take a positive-definite 3-space of
        the ambient form, cut the span of it and x with the hyperplane
        orthogonal to x, and diagonalize the restriction.  At least two
        positive directions always survive in signature (3, k)."""
        lat = self.lattice
        t, diag = diagonalize_symmetric(lat.gram)
        pos_rows = [row for row, dv in zip(t, diag) if dv > 0]
        assert len(pos_rows) == 3
        stack = [list(self.x)] + [list(r) for r in pos_rows]
        reduced, pivots = rref(stack)
        span = [reduced[i] for i in range(len(pivots))]
        # cut with the x-orthogonality constraint inside the span
        gram_v = gram_restrict(span, lat.gram)
        x_coeffs = solve_in_row_space(span, self.x)
        assert x_coeffs is not None
        constraint = [
            sum(Fraction(gram_v[i][j]) * x_coeffs[i] for i in range(len(span)))
            for j in range(len(span))
        ]
        kern: list[list[Fraction]] = []
        pivot = next((j for j, c in enumerate(constraint) if c != 0), None)
        assert pivot is not None
        for j in range(len(span)):
            if j == pivot:
                continue
            vec = [Fraction(0)] * len(span)
            vec[j] = Fraction(1)
            vec[pivot] = -constraint[j] / constraint[pivot]
            kern.append(vec)
        w_rows = [
            [sum(k[i] * Fraction(span[i][j]) for i in range(len(span))) for j in range(lat.rank)]
            for k in kern
        ]
        gw = gram_restrict(w_rows, lat.gram)
        tw, dw = diagonalize_symmetric(gw)
        seeds = []
        for trow, dv in zip(tw, dw):
            if dv > 0:
                amb = [
                    sum(trow[i] * Fraction(w_rows[i][j]) for i in range(len(w_rows)))
                    for j in range(lat.rank)
                ]
                seeds.append(self.to_frame(clear_denominators(amb)))
        assert len(seeds) >= 2, "complement of a positive class must contain a positive plane"
        return seeds[0], seeds[1]

    # -- plane tests -----------------------------------------------------------

    def plane_shape(self, u: Sequence[int], v: Sequence[int]) -> bool:
        """True when (u, v) spans a positive-definite 2-plane."""
        au = mat_vec(self.gram_n, u)
        quu = dot(u, au)
        if quu <= 0:
            return False
        quv = dot(v, au)
        qvv = dot(v, mat_vec(self.gram_n, v))
        return quu * qvv - quv * quv > 0

    def wall_witnesses(self, u: Sequence[int], v: Sequence[int]) -> list[IntVec]:
        """Ambient wall classes orthogonal to x, u and v with norm in the
        target set; empty exactly when the plane's 3-space passes the
        period-image test.  Assumes plane_shape holds."""
        au = mat_vec(self.gram_n, u)
        av = mat_vec(self.gram_n, v)
        kern = kernel_int([au, av], canonical=False)
        sub = gram_restrict(kern, self.gram_n)
        flipped = [[-int(e) for e in row] for row in sub]
        table = vectors_of_norms(flipped, self.targets)
        out = set()
        for hits in table.values():
            for coeffs in hits:
                zn = [
                    sum(coeffs[i] * kern[i][j] for i in range(len(kern)))
                    for j in range(self.dim)
                ]
                amb = self.to_ambient(zn)
                if content(amb) == 1:
                    out.add(sign_normalize(amb))
        return sorted(out)


def _sample_plane(frame: _FiberFrame, rng: random.Random, max_tries: int = 400):
    """Draw integer plane bases near the positive seeds until the span is
    positive definite; importance sampling is needed because the positive
    cone is a thin cap of the full coordinate box."""
    p1, p2 = frame.seeds
    m = frame.dim
    for _ in range(max_tries):
        a1, a2 = rng.randint(2, 4), rng.randint(0, 1)
        b1, b2 = rng.randint(2, 4), rng.randint(0, 1)
        u = [a1 * p1[i] + a2 * p2[i] + rng.randint(-2, 2) for i in range(m)]
        v = [b2 * p1[i] + b1 * p2[i] + rng.randint(-2, 2) for i in range(m)]
        if frame.plane_shape(u, v):
            return u, v
    raise InvariantViolation("could not sample a positive plane; base class too special")


def sample_fiber(
    lattice: BBFLattice,
    x: Sequence[Rational],
    count: int,
    norms: NormTargetSet | Iterable[int],
    seed: int,
) -> list[FiberSample]:
    """Draw random rational 2-planes in the complement of x (retrying until
    the span is positive), and mark each by the period-image test of the
    3-space it spans with x.  Deterministic for a fixed seed."""
    norms = NormTargetSet.coerce(norms)
    frame = _FiberFrame(lattice, x, norms)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        u, v = _sample_plane(frame, rng)
        witnesses = frame.wall_witnesses(u, v)
        plane = OrientedPositiveSubspace(
            lattice, (frame.to_ambient(u), frame.to_ambient(v))
        )
        point = FiberPoint(frame.x, plane)
        reports = tuple(
            WallReport(wall_class=w, norm=int(lattice.q(w))) for w in witnesses
        )
        out.append(FiberSample(point=point, accepted=not witnesses, witnesses=reports))
    return out


def _sample_accepted(frame: _FiberFrame, rng: random.Random, max_tries: int = 2000):
    for _ in range(max_tries):
        u, v = _sample_plane(frame, rng)
        if not frame.wall_witnesses(u, v):
            return u, v
    raise InvariantViolation("could not sample an accepted fiber point")


def fiber_connectivity_experiment(
    lattice: BBFLattice,
    x: Sequence[Rational],
    pairs: int,
    steps: int,
    norms: NormTargetSet | Iterable[int],
    seed: int,
    retry_budget: int = 30,
) -> ConnectivityReport:
    """Empirical connectivity of the accepted locus: for each pair of
    accepted fiber points, walk a discretized path of rational intermediate
    planes (straight-line interpolation of the bases first, then random
    quadratic bumps on rejection) and count whether an all-accepted path
    shows up within the retry budget.

    wall_hits counts the intermediate planes that were exactly orthogonal
    to a wall class; since the walls have codimension 2 in the plane
    Grassmannian, generic rational paths should report zero.

    Prefer a prime number of steps.  A wall class z orthogonal to both
    endpoint vectors on one side crosses the straight path at the rational
    parameter q(z,v0) / (q(z,v0) - q(z,v1)); that parameter lands on the
    k/steps grid only when steps divides a multiple of the pairing
    difference, which a prime steps larger than the typical pairings rules
    out.  Composite step counts (e.g. 50 or 51) do produce exact hits on
    real data; the retry machinery still finds paths, but the hit counter
    records them.
    """
    norms = NormTargetSet.coerce(norms)
    frame = _FiberFrame(lattice, x, norms)
    rng = random.Random(seed)
    m = frame.dim
    paths_found = wall_hits = planes_sampled = geo_rejects = retries = 0
    for _ in range(pairs):
        u0, v0 = _sample_accepted(frame, rng)
        u1, v1 = _sample_accepted(frame, rng)
        found = False
        for attempt in range(retry_budget):
            if attempt == 0:
                du = dv = [0] * m
            else:
                amp = 1 + attempt // 5
                du = [rng.randint(-amp, amp) for _ in range(m)]
                dv = [rng.randint(-amp, amp) for _ in range(m)]
                retries += 1
            cu = [u0[i] + u1[i] + du[i] for i in range(m)]
            cv = [v0[i] + v1[i] + dv[i] for i in range(m)]
            good = True
            for k in range(1, steps):
                s0, s1, s2 = (steps - k) ** 2, k * (steps - k), k * k
                uk = list(clear_denominators([s0 * u0[i] + s1 * cu[i] + s2 * u1[i] for i in range(m)]))
                vk = list(clear_denominators([s0 * v0[i] + s1 * cv[i] + s2 * v1[i] for i in range(m)]))
                planes_sampled += 1
                if not frame.plane_shape(uk, vk):
                    geo_rejects += 1
                    good = False
                    break
                if frame.wall_witnesses(uk, vk):
                    wall_hits += 1
                    good = False
                    break
            if good:
                found = True
                break
        if found:
            paths_found += 1
    return ConnectivityReport(
        pairs_tested=pairs,
        paths_found=paths_found,
        wall_hits=wall_hits,
        planes_sampled=planes_sampled,
        geometric_rejections=geo_rejects,
        path_retries=retries,
    )
