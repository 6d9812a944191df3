"""Rational local types, filtration calculus, and residue typing.

A local type is a Weyl class of a rational cocharacter: for GL(n) a
multiset of n rationals (stored as a dominant, i.e. descending, tuple);
for SL2 a single coefficient a meaning a*(coroot); for PSL2 a single
coefficient b meaning b*(fundamental coweight).

Pairing conventions, fixed once and used everywhere:

    <alpha, coroot> = 2,   <alpha, coweight> = 1,   coroot = 2*coweight.

Hence an SL2 type a has standard-representation weights (+a, -a) and
adjoint grades (2a, 0, -2a); a PSL2 type b has adjoint grades (b, 0, -b);
and pushing out along SL2 -> PSL2 sends a to 2a, which makes the two
adjoint gradings agree.  For b = 1 the positive part of the grading is the
single top root space, the source of the unipotent cusp direction.

Filtrations are decreasing and indexed by rationals; positive degree
raises the filtration.  A filtered space is stored as one weight per basis
vector, which keeps convolution, duals, and grading checks one-line
multiset computations.  Weights are unnormalized: no window reduction to
[0,1) is applied unless `normalize_window` is called explicitly.

All arithmetic in this module is exact (fractions.Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import ValidationError
from .jsonio import format_fraction, parse_fraction

GL = "GL"
SL2 = "SL2"
PSL2 = "PSL2"


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise ValidationError(f"exact rational required, got float {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class LocalType:
    """Rational cocharacter class at a marked point.

    `weights` is used for GL (dominant order), `coeff` for SL2/PSL2.  The
    coefficient is any rational; negation is a Weyl reflection, so classes
    compare via `same_class`, while `==` compares chosen representatives.
    """

    group: str
    weights: tuple[Fraction, ...] = ()
    coeff: Fraction | None = None

    def __post_init__(self):
        if self.group == GL:
            if self.coeff is not None or not self.weights:
                raise ValidationError("GL local type needs a nonempty weight multiset")
            ws = tuple(sorted((_frac(w) for w in self.weights), reverse=True))
            object.__setattr__(self, "weights", ws)
        elif self.group in (SL2, PSL2):
            if self.weights or self.coeff is None:
                raise ValidationError(f"{self.group} local type needs a single coefficient")
            object.__setattr__(self, "coeff", _frac(self.coeff))
        else:
            raise ValidationError(f"unknown group kind {self.group!r}")

    @property
    def rank(self) -> int:
        return len(self.weights) if self.group == GL else 2

    def same_class(self, other: "LocalType") -> bool:
        """Equality as Weyl classes (sign of the SL2/PSL2 coefficient is a
        Weyl reflection; GL weights already compare as multisets)."""
        if self.group != other.group:
            return False
        if self.group == GL:
            return self.weights == other.weights
        return abs(self.coeff) == abs(other.coeff)

    def is_integral(self) -> bool:
        if self.group == GL:
            return all(w.denominator == 1 for w in self.weights)
        return self.coeff.denominator == 1

    def to_json(self) -> dict:
        if self.group == GL:
            return {"group": GL, "weights": [format_fraction(w) for w in self.weights]}
        return {"group": self.group, "coeff": format_fraction(self.coeff)}

    @classmethod
    def from_json(cls, obj) -> "LocalType":
        if not isinstance(obj, dict) or "group" not in obj:
            raise ValidationError("local type object needs a 'group' field")
        group = obj["group"]
        if group == GL:
            ws = obj.get("weights")
            if not isinstance(ws, list):
                raise ValidationError("GL local type needs a 'weights' list")
            return cls(GL, weights=tuple(parse_fraction(w) for w in ws))
        if group in (SL2, PSL2):
            return cls(group, coeff=parse_fraction(obj.get("coeff", "0")))
        raise ValidationError(f"unknown group kind {group!r}")


def gl_type(*weights) -> LocalType:
    return LocalType(GL, weights=tuple(Fraction(w) for w in weights))


def sl2_type(a) -> LocalType:
    return LocalType(SL2, coeff=Fraction(a))


def psl2_type(b) -> LocalType:
    return LocalType(PSL2, coeff=Fraction(b))


# ---------------------------------------------------------------------------
# Lie algebra grading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieGrading:
    """Graded basis of the Lie algebra under a rational cocharacter."""

    entries: tuple[tuple[str, Fraction], ...]

    def levels(self) -> dict[Fraction, tuple[str, ...]]:
        out: dict[Fraction, list[str]] = {}
        for label, grade in self.entries:
            out.setdefault(grade, []).append(label)
        return {g: tuple(ls) for g, ls in out.items()}

    def at_least(self, a) -> tuple[str, ...]:
        a = Fraction(a)
        return tuple(label for label, g in self.entries if g >= a)

    def positive_part(self) -> tuple[str, ...]:
        return tuple(label for label, g in self.entries if g > 0)

    def grades(self) -> tuple[Fraction, ...]:
        return tuple(g for _, g in self.entries)


def mp_grading(local_type: LocalType) -> LieGrading:
    """Grading of the Lie algebra by the adjoint action of the cocharacter.

    GL(n): the matrix unit E[i,j] has grade alpha_i - alpha_j.  SL2 with
    coefficient a, and PSL2 with coefficient b, grade the root basis
    (F, H, E) by (-2a, 0, 2a) and (-b, 0, b) respectively.
    """
    if local_type.group == GL:
        ws = local_type.weights
        n = len(ws)
        entries = tuple(
            (f"E[{i + 1},{j + 1}]", ws[i] - ws[j]) for i in range(n) for j in range(n)
        )
        return LieGrading(entries)
    top = 2 * local_type.coeff if local_type.group == SL2 else local_type.coeff
    return LieGrading((("F", -top), ("H", Fraction(0)), ("E", top)))


# ---------------------------------------------------------------------------
# Filtered spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FilteredSpace:
    """Finite-dimensional space with a rational weight on each basis vector.

    The decreasing filtration is F_{>=a} = span{e_i : weight_i >= a}.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(_frac(w) for w in self.weights))
        if not self.weights:
            raise ValidationError("filtered space must have positive dimension")

    @property
    def dim(self) -> int:
        return len(self.weights)

    def jumps(self) -> dict[Fraction, int]:
        """Graded dimensions: weight -> dim gr_a."""
        out: dict[Fraction, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def dim_at_least(self, a) -> int:
        a = Fraction(a)
        return sum(1 for w in self.weights if w >= a)

    def weight_sum(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def model_filtration(local_type: LocalType, rep: str = "standard") -> FilteredSpace:
    """Model filtration of a representation: basis weights are the pairings
    of the representation weights with the cocharacter.

    reps: GL has "standard"; SL2 has "standard" (via the lift) and
    "adjoint"; PSL2 has only "adjoint".
    """
    group = local_type.group
    if group == GL and rep == "standard":
        return FilteredSpace(local_type.weights)
    if group == SL2 and rep == "standard":
        a = local_type.coeff
        return FilteredSpace((a, -a))
    if group == SL2 and rep == "adjoint":
        a = local_type.coeff
        return FilteredSpace((2 * a, Fraction(0), -2 * a))
    if group == PSL2 and rep == "adjoint":
        b = local_type.coeff
        return FilteredSpace((b, Fraction(0), -b))
    raise ValidationError(f"representation {rep!r} not available for {group}")


def filt_sum(e: FilteredSpace, f: FilteredSpace) -> FilteredSpace:
    return FilteredSpace(e.weights + f.weights)


def filt_tensor(e: FilteredSpace, f: FilteredSpace) -> FilteredSpace:
    """Convolution filtration: weights add pairwise (basis e_i (x) f_j in
    lexicographic order)."""
    return FilteredSpace(tuple(w + v for w in e.weights for v in f.weights))


def filt_dual(e: FilteredSpace) -> FilteredSpace:
    return FilteredSpace(tuple(-w for w in e.weights))


def filt_hom(e: FilteredSpace, f: FilteredSpace) -> FilteredSpace:
    return filt_tensor(filt_dual(e), f)


def boxtimes(e: FilteredSpace, f: FilteredSpace) -> FilteredSpace:
    """External product realized block-diagonally on associated spaces."""
    return filt_sum(e, f)


def external_product(t1: LocalType, t2: LocalType) -> LocalType:
    """External product of GL local types: concatenated weight multisets."""
    if t1.group != GL or t2.group != GL:
        raise ValidationError("external product is realized here for GL types only")
    return LocalType(GL, weights=t1.weights + t2.weights)


def normalize_window(e: FilteredSpace) -> tuple[FilteredSpace, int]:
    """Reduce weights into the fundamental window [0, 1).

    Returns the normalized space and the total integral shift, which is the
    degree of the elementary modification absorbing the reduction.
    """
    shifts = [floor(w) for w in e.weights]
    normalized = FilteredSpace(tuple(w - s for w, s in zip(e.weights, shifts)))
    return normalized, sum(shifts)


# ---------------------------------------------------------------------------
# Parahoric bundle data and degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParahoricBundleData:
    """Underlying integer degree plus one filtered fiber per marked point."""

    degree: int
    points: tuple[tuple[str, FilteredSpace], ...]

    def __post_init__(self):
        if not isinstance(self.degree, int):
            raise ValidationError("underlying degree must be an integer")
        points = tuple(self.points)
        dims = {fs.dim for _, fs in points}
        if len(dims) > 1:
            raise ValidationError(f"ranks at marked points differ: {sorted(dims)}")
        ids = [pid for pid, _ in points]
        if len(set(ids)) != len(ids):
            raise ValidationError("marked point ids must be distinct")
        object.__setattr__(self, "points", points)

    @property
    def rank(self) -> int:
        return self.points[0][1].dim if self.points else 1


def pdeg(data: ParahoricBundleData) -> Fraction:
    """Parahoric vector degree: underlying degree plus all weight sums."""
    return data.degree + sum((fs.weight_sum() for _, fs in data.points), Fraction(0))


def top_exterior(data: ParahoricBundleData) -> ParahoricBundleData:
    """Determinant line: same underlying degree bookkeeping, one-dimensional
    fiber of weight sum(weights) at each point."""
    return ParahoricBundleData(
        degree=data.degree,
        points=tuple((pid, FilteredSpace((fs.weight_sum(),))) for pid, fs in data.points),
    )


def bundle_sum(a: ParahoricBundleData, b: ParahoricBundleData) -> ParahoricBundleData:
    return _bundle_combine(a, b, filt_sum, a.degree + b.degree)


def bundle_tensor(a: ParahoricBundleData, b: ParahoricBundleData) -> ParahoricBundleData:
    deg = a.degree * b.rank + b.degree * a.rank
    return _bundle_combine(a, b, filt_tensor, deg)


def _bundle_combine(a, b, op, degree) -> ParahoricBundleData:
    if [pid for pid, _ in a.points] != [pid for pid, _ in b.points]:
        raise ValidationError("bundle data must share the same marked points")
    points = tuple(
        (pid, op(fs_a, fs_b)) for (pid, fs_a), (_, fs_b) in zip(a.points, b.points)
    )
    return ParahoricBundleData(degree=degree, points=points)


def normalize_bundle(data: ParahoricBundleData) -> ParahoricBundleData:
    """Apply the fundamental-window reduction at every point, absorbing the
    integral shifts into the underlying degree.  pdeg is unchanged."""
    degree = data.degree
    points = []
    for pid, fs in data.points:
        normalized, shift = normalize_window(fs)
        degree += shift
        points.append((pid, normalized))
    return ParahoricBundleData(degree=degree, points=tuple(points))


# ---------------------------------------------------------------------------
# Residues of lambda-connections
# ---------------------------------------------------------------------------

ALGEBRAIC = "algebraic"
LOG = "log"
NOT_ADJUSTED = "not-adjusted"

Matrix = tuple[tuple[Fraction, ...], ...]


def _as_matrix(rows, dim: int) -> Matrix:
    mat = tuple(tuple(_frac(v) for v in row) for row in rows)
    if len(mat) != dim or any(len(row) != dim for row in mat):
        raise ValidationError(f"expected a {dim}x{dim} matrix")
    return mat


@dataclass(frozen=True)
class ResidueDatum:
    """Residue lambda*theta + N of a lambda-connection in a model basis.

    `space` carries the basis weights; `semisimple` is the diagonal part,
    which must equal lambda times the weights; `nilpotent` is N.  The
    original local type is kept when the datum was built from one.
    """

    lam: Fraction
    space: FilteredSpace
    semisimple: tuple[Fraction, ...]
    nilpotent: Matrix
    local_type: LocalType | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", _frac(self.lam))
        object.__setattr__(self, "semisimple", tuple(_frac(s) for s in self.semisimple))
        object.__setattr__(self, "nilpotent", _as_matrix(self.nilpotent, self.space.dim))
        if len(self.semisimple) != self.space.dim:
            raise ValidationError("semisimple part has wrong dimension")


def residue_from_type(lam, local_type: LocalType, nilpotent, rep: str = "standard") -> ResidueDatum:
    """Residue datum lambda*theta + N in the model basis of `rep`."""
    space = model_filtration(local_type, rep)
    lam = _frac(lam)
    return ResidueDatum(
        lam=lam,
        space=space,
        semisimple=tuple(lam * w for w in space.weights),
        nilpotent=_as_matrix(nilpotent, space.dim),
        local_type=local_type,
    )


def zero_matrix(dim: int) -> Matrix:
    return tuple((Fraction(0),) * dim for _ in range(dim))


def _is_strictly_raising(n: Matrix, weights: tuple[Fraction, ...]) -> bool:
    """N e_j lands in span{e_i : weight_i > weight_j} for every j."""
    dim = len(weights)
    for i in range(dim):
        for j in range(dim):
            if n[i][j] != 0 and not weights[i] > weights[j]:
                return False
    return True


def classify_residue(res: ResidueDatum) -> str:
    """Type flag of a residue: algebraic (N = 0, strictly raising holds
    vacuously), log (N != 0 but strictly raising), or not-adjusted."""
    expected = tuple(res.lam * w for w in res.space.weights)
    if res.semisimple != expected:
        raise ValidationError(
            "malformed residue: semisimple part does not equal lambda * weights"
        )
    is_zero = all(v == 0 for row in res.nilpotent for v in row)
    if not _is_strictly_raising(res.nilpotent, res.space.weights):
        return NOT_ADJUSTED
    return ALGEBRAIC if is_zero else LOG


def residue_sum(r1: ResidueDatum, r2: ResidueDatum) -> ResidueDatum:
    _require_same_lambda(r1, r2)
    d1, d2 = r1.space.dim, r2.space.dim
    n = d1 + d2
    nil = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d1):
        for j in range(d1):
            nil[i][j] = r1.nilpotent[i][j]
    for i in range(d2):
        for j in range(d2):
            nil[d1 + i][d1 + j] = r2.nilpotent[i][j]
    return ResidueDatum(
        lam=r1.lam,
        space=filt_sum(r1.space, r2.space),
        semisimple=r1.semisimple + r2.semisimple,
        nilpotent=tuple(tuple(row) for row in nil),
    )


def residue_tensor(r1: ResidueDatum, r2: ResidueDatum) -> ResidueDatum:
    """Tensor residue: semisimple parts add on the product basis and the
    nilpotent part is N1 (x) 1 + 1 (x) N2."""
    _require_same_lambda(r1, r2)
    d1, d2 = r1.space.dim, r2.space.dim
    n = d1 * d2
    nil = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d1):
        for j in range(d1):
            if r1.nilpotent[i][j] != 0:
                for k in range(d2):
                    nil[i * d2 + k][j * d2 + k] += r1.nilpotent[i][j]
    for k in range(d2):
        for l in range(d2):
            if r2.nilpotent[k][l] != 0:
                for i in range(d1):
                    nil[i * d2 + k][i * d2 + l] += r2.nilpotent[k][l]
    semisimple = tuple(s1 + s2 for s1 in r1.semisimple for s2 in r2.semisimple)
    return ResidueDatum(
        lam=r1.lam,
        space=filt_tensor(r1.space, r2.space),
        semisimple=semisimple,
        nilpotent=tuple(tuple(row) for row in nil),
    )


def residue_dual(r: ResidueDatum) -> ResidueDatum:
    """Dual residue -(lambda*theta + N)^T on the dual basis."""
    dim = r.space.dim
    nil = tuple(tuple(-r.nilpotent[j][i] for j in range(dim)) for i in range(dim))
    return ResidueDatum(
        lam=r.lam,
        space=filt_dual(r.space),
        semisimple=tuple(-s for s in r.semisimple),
        nilpotent=nil,
    )


def _require_same_lambda(r1: ResidueDatum, r2: ResidueDatum) -> None:
    if r1.lam != r2.lam:
        raise ValidationError("residues belong to connections with different lambda")


# ---------------------------------------------------------------------------
# Functorial transformation rules
# ---------------------------------------------------------------------------


def pullback_type(local_type: LocalType, e: int) -> LocalType:
    """Ramified pullback with index e scales the cocharacter: theta -> e*theta."""
    _check_ram_index(e)
    if local_type.group == GL:
        return LocalType(GL, weights=tuple(e * w for w in local_type.weights))
    return LocalType(local_type.group, coeff=e * local_type.coeff)


def pullback_residue(res: ResidueDatum, e: int) -> ResidueDatum:
    """Residue scales by the ramification index; type flags are preserved."""
    _check_ram_index(e)
    return ResidueDatum(
        lam=res.lam,
        space=FilteredSpace(tuple(e * w for w in res.space.weights)),
        semisimple=tuple(e * s for s in res.semisimple),
        nilpotent=tuple(tuple(e * v for v in row) for row in res.nilpotent),
        local_type=pullback_type(res.local_type, e) if res.local_type else None,
    )


def pullback_pdeg(degree: Fraction, deg_f: int) -> Fraction:
    """The parahoric degree scales multiplicatively by the covering degree."""
    if not isinstance(deg_f, int) or deg_f < 1:
        raise ValidationError("covering degree must be a positive integer")
    return Fraction(degree) * deg_f


def pullback_bundle(data: ParahoricBundleData, profiles: dict[str, tuple[int, ...]]) -> ParahoricBundleData:
    """Pull back bundle data along a cover given by ramification profiles.

    `profiles[pid]` lists the ramification indices over the point `pid`;
    all profiles must sum to the same covering degree.  Each preimage
    point receives the weights scaled by its index, and the underlying
    degree multiplies by the covering degree.
    """
    ids = [pid for pid, _ in data.points]
    if set(profiles) != set(ids):
        raise ValidationError("profiles must cover exactly the marked points")
    degrees = {sum(profiles[pid]) for pid in ids}
    if len(degrees) != 1:
        raise ValidationError(f"profiles have inconsistent covering degrees: {sorted(degrees)}")
    deg_f = degrees.pop()
    points = []
    for pid, fs in data.points:
        for i, e in enumerate(profiles[pid]):
            _check_ram_index(e)
            points.append((f"{pid}/{i + 1}", FilteredSpace(tuple(e * w for w in fs.weights))))
    return ParahoricBundleData(degree=data.degree * deg_f, points=tuple(points))


def pushout_sl2_to_psl2(local_type: LocalType) -> LocalType:
    """Central isogeny pushout: coefficient a in coroot units becomes 2a in
    coweight units.  The fractional type is trivial iff 2a is integral."""
    if local_type.group != SL2:
        raise ValidationError(f"pushout expects an SL2 type, got {local_type.group}")
    return LocalType(PSL2, coeff=2 * local_type.coeff)


def _check_ram_index(e) -> None:
    if not isinstance(e, int) or e < 1:
        raise ValidationError(f"ramification index must be a positive integer, got {e!r}")
