"""Convolution of GL-invariant functions on pairs of complete flags.

Everything here happens over a prime field F_q.  A complete flag in
F_q^n is a chain V_1 < V_2 < ... < V_{n-1} of subspaces with
dim V_i = i.  GL_n(F_q) acts diagonally on pairs of flags, and the
orbit of a pair (W, V) is labeled by a permutation: the relative
position.  Row i of the label records where the chain of W jumps
across the chain of V,

    w(i) = the unique j where d_{ij} = dim(W_i \\cap V_j)
           jumps in both i and j,

so that the pair (wE, E) built from the coordinate flag E and its
permuted copy has relative position exactly w.  Functions constant on
orbits are stored by label (:class:`OrbitFn`) and multiply by
convolution over a middle flag,

    (f * f')(W, V) = sum over flags M of f(W, M) f'(M, V),

evaluated once per orbit on a representative pair.  The distinguished
functions are f1, the indicator of the pairs that agree up to some
level g - 1 and then interleave, and its relatives f_t defined by
strictly increasing minimal-inclusion indices; the verify_* entry
points check the product rule f1 * f_t = [t]_q f_t + q^t f_{t+1}, the
telescoping factorization of f_t through products of (f1 - [k]_q f0),
the span and commutativity of the f_t, and the exact match between
convolution structure constants and Hecke algebra structure constants
at the same q.

Enumerating flags is exponential in n, so every entry point that needs
the full flag list takes a `budget` and refuses (with
:class:`BudgetExceeded`) before enumerating anything too large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .hecke import HeckeElt, mul, tau
from .polyring import q_int
from .report import CheckResult
from .spectral import rank
from .symgroup import Perm, enumerate_perms

__all__ = [
    "BudgetExceeded",
    "FLAG_BUDGET",
    "FqMatrix",
    "Subspace",
    "Flag",
    "flag_count",
    "enumerate_flags",
    "relative_position",
    "representative_pair",
    "OrbitFn",
    "f1",
    "f_t",
    "in_x_t",
    "convolve",
    "verify_lemma3",
    "verify_factorization",
    "verify_span_commutativity",
    "compare_structure_constants",
]

FLAG_BUDGET = 20000


class BudgetExceeded(ValueError):
    """Raised before enumerating a flag variety larger than the budget."""


def _require_prime(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be a prime, got {q!r}")
    d = 2
    while d * d <= q:
        if q % d == 0:
            # TODO prime powers need a field abstraction; arithmetic mod q
            # only covers prime q
            raise ValueError(f"q must be prime (prime fields only), got {q}")
        d += 1


# ---------------------------------------------------------------------------
# row reduction over F_q


def _rref(rows: Iterable[Sequence[int]], q: int) -> tuple[tuple[int, ...], ...]:
    """Canonical reduced row echelon form; zero rows dropped."""
    mat = [[x % q for x in row] for row in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, q)
        mat[r] = [(x * inv) % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r])


def _reduce_vector(v: Sequence[int], rows: Sequence[Sequence[int]], q: int) -> tuple[int, ...]:
    out = [x % q for x in v]
    for row in rows:
        p = next(i for i, x in enumerate(row) if x)
        c = out[p]
        if c:
            out = [(x - c * y) % q for x, y in zip(out, row)]
    return tuple(out)


def _invert_mod(rows: Sequence[Sequence[int]], q: int) -> list[list[int]]:
    """Inverse of a square invertible matrix over F_q (Gauss-Jordan)."""
    n = len(rows)
    aug = [[x % q for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, q)
        aug[col] = [(x * inv) % q for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# trailing-pivot profiles: the fast route to a relative position
#
# Feed the chain basis of W written in the chain coordinates of V; row i
# reduced modulo the span of rows 1..i-1 has its last nonzero entry at
# position w(i).  This is the second-difference permutation of the
# intersection dimensions, computed without any intersections; tests
# compare it against the literal definition exhaustively.


def _profile_generic(rows: Iterable[Sequence[int]], q: int) -> tuple[int, ...]:
    stored: dict[int, list[int]] = {}
    word = []
    for row in rows:
        r = list(row)
        while True:
            t = -1
            for i in range(len(r) - 1, -1, -1):
                if r[i]:
                    t = i
                    break
            if t < 0:
                raise ArithmeticError("dependent rows have no profile")
            s = stored.get(t)
            if s is None:
                break
            c = r[t]
            r = [(x - c * y) % q for x, y in zip(r, s)]
        inv = pow(r[t], -1, q)
        stored[t] = [(x * inv) % q for x in r]
        word.append(t + 1)
    return tuple(word)


def _profile2(rows: Iterable[int]) -> tuple[int, ...]:
    # same as _profile_generic with rows packed into ints, bit k = column k
    stored: dict[int, int] = {}
    word = []
    for r in rows:
        t = r.bit_length()
        s = stored.get(t)
        while s is not None:
            r ^= s
            t = r.bit_length()
            s = stored.get(t)
        if not r:
            raise ArithmeticError("dependent rows have no profile")
        stored[t] = r
        word.append(t)
    return tuple(word)


def _pack2(row: Sequence[int]) -> int:
    acc = 0
    for i, x in enumerate(row):
        if x & 1:
            acc |= 1 << i
    return acc


def _inv2(rows: Sequence[int], n: int) -> list[int]:
    """Inverse over F_2 of a packed square matrix."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i] >> col & 1), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and (aug[i] >> col & 1):
                aug[i] ^= aug[col]
    return [a >> n for a in aug]


def _matmul_mod(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], q: int) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % q for col in cols] for row in a]


def _matmul2(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    for r in a:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= b[j]
            r >>= 1
            j += 1
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# matrices, subspaces, flags


@dataclass(frozen=True)
class FqMatrix:
    """A matrix over F_q with entries reduced mod q."""

    q: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, rows: Iterable[Sequence[int]], q: int) -> "FqMatrix":
        _require_prime(q)
        reduced = tuple(tuple(x % q for x in row) for row in rows)
        if reduced and any(len(r) != len(reduced[0]) for r in reduced):
            raise ValueError("ragged matrix")
        return cls(q, reduced)

    @classmethod
    def identity(cls, n: int, q: int) -> "FqMatrix":
        return cls.make([[int(i == j) for j in range(n)] for i in range(n)], q)

    def rank(self) -> int:
        return len(_rref(self.rows, self.q))

    def is_invertible(self) -> bool:
        return bool(self.rows) and len(self.rows) == len(self.rows[0]) == self.rank()

    def inverse(self) -> "FqMatrix":
        return FqMatrix(self.q, tuple(tuple(r) for r in _invert_mod(self.rows, self.q)))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.q != other.q:
            raise ValueError("field mismatch")
        return FqMatrix(self.q, tuple(tuple(r) for r in _matmul_mod(self.rows, other.rows, self.q)))

    def apply_to_row(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row vector times the matrix."""
        q = self.q
        out = [0] * len(self.rows[0])
        for c, row in zip(v, self.rows):
            if c % q:
                for j, x in enumerate(row):
                    out[j] = (out[j] + c * x) % q
        return tuple(out)


class Subspace:
    """A subspace of F_q^n held in canonical reduced row echelon form."""

    __slots__ = ("ambient", "q", "rows")

    def __init__(self, vectors: Iterable[Sequence[int]], ambient: int, q: int) -> None:
        _require_prime(q)
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in F_q^{ambient}")
        self.ambient = ambient
        self.q = q
        self.rows: tuple[tuple[int, ...], ...] = _rref(vecs, q)

    @classmethod
    def _make(cls, ambient: int, q: int, rref_rows: tuple[tuple[int, ...], ...]) -> "Subspace":
        s = object.__new__(cls)
        s.ambient, s.q, s.rows = ambient, q, rref_rows
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return not any(_reduce_vector(v, self.rows, self.q))

    def __le__(self, other: "Subspace") -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if (self.ambient, self.q) != (other.ambient, other.q):
            raise ValueError("subspaces of different spaces")
        return all(other.contains_vector(r) for r in self.rows)

    def transformed(self, g: FqMatrix) -> "Subspace":
        return Subspace([g.apply_to_row(r) for r in self.rows], self.ambient, self.q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient, self.q, self.rows) == (other.ambient, other.q, other.rows)

    def __hash__(self) -> int:
        return hash((self.ambient, self.q, self.rows))

    def __repr__(self) -> str:
        return f"<Subspace dim {self.dim} of F_{self.q}^{self.ambient}>"


class Flag:
    """A complete flag in F_q^n: proper steps of dimensions 1..n-1."""

    __slots__ = ("q", "steps", "n")

    def __init__(self, steps: Iterable[Subspace], q: int) -> None:
        sts = tuple(steps)
        if not sts:
            raise ValueError("a flag needs at least the dimension-1 step")
        n = sts[0].ambient
        for i, s in enumerate(sts, 1):
            if (s.ambient, s.q) != (n, q):
                raise ValueError("steps live in different spaces")
            if s.dim != i:
                raise ValueError(f"step {i} has dimension {s.dim}")
            if i > 1 and not sts[i - 2] <= s:
                raise ValueError(f"step {i} does not contain step {i - 1}")
        if len(sts) != n - 1:
            raise ValueError(f"complete flag in F^{n} needs {n - 1} steps, got {len(sts)}")
        self.q = q
        self.steps = sts
        self.n = n

    @classmethod
    def _make(cls, q: int, n: int, steps: tuple[Subspace, ...]) -> "Flag":
        f = object.__new__(cls)
        f.q, f.steps, f.n = q, steps, n
        return f

    @classmethod
    def from_basis(cls, vectors: Iterable[Sequence[int]], q: int) -> "Flag":
        """The flag whose step i is the span of the first i vectors."""
        vecs = [tuple(v) for v in vectors]
        n = len(vecs)
        steps = []
        for i in range(1, n):
            sub = Subspace(vecs[:i], n, q)
            if sub.dim != i:
                raise ValueError("vectors are linearly dependent")
            steps.append(sub)
        if len(_rref(vecs, q)) != n:
            raise ValueError("vectors are linearly dependent")
        return cls(steps, q) if n > 1 else cls._make(q, n, ())

    @classmethod
    def standard(cls, n: int, q: int) -> "Flag":
        """The coordinate flag E: step i spanned by e_1, ..., e_i."""
        return cls.permuted(Perm.identity(n), q)

    @classmethod
    def permuted(cls, w: Perm, q: int) -> "Flag":
        """The coordinate flag wE: step i spanned by e_{w(1)}, ..., e_{w(i)}."""
        n = w.n
        unit = [tuple(int(j == w(i) - 1) for j in range(n)) for i in range(1, n + 1)]
        return cls.from_basis(unit, q)

    def step(self, i: int) -> Subspace:
        """Step i for i in [0, n]: 0 is the zero space, n the whole space."""
        if not 0 <= i <= self.n:
            raise ValueError(f"step index {i} outside 0..{self.n}")
        if i == 0:
            return Subspace._make(self.n, self.q, ())
        if i == self.n:
            full = tuple(tuple(int(r == c) for c in range(self.n)) for r in range(self.n))
            return Subspace._make(self.n, self.q, full)
        return self.steps[i - 1]

    def chain_rows(self) -> list[tuple[int, ...]]:
        """A basis b_1, ..., b_n with step i spanned by b_1, ..., b_i."""
        taken: set[int] = set()
        rows: list[tuple[int, ...]] = []
        for s in self.steps:
            fresh = None
            for row in s.rows:
                p = next(i for i, x in enumerate(row) if x)
                if p not in taken:
                    if fresh is not None:
                        raise ArithmeticError("more than one new pivot in a step")
                    fresh = (p, row)
            if fresh is None:
                raise ArithmeticError("no new pivot in a step")
            taken.add(fresh[0])
            rows.append(fresh[1])
        missing = next(i for i in range(self.n) if i not in taken)
        rows.append(tuple(int(j == missing) for j in range(self.n)))
        return rows

    def transformed(self, g: FqMatrix) -> "Flag":
        if g.q != self.q:
            raise ValueError("field mismatch")
        if not g.is_invertible():
            raise ValueError("flags only transform under invertible matrices")
        return Flag([s.transformed(g) for s in self.steps], self.q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Flag):
            return NotImplemented
        return (self.q, self.n, self.steps) == (other.q, other.n, other.steps)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.steps))

    def __repr__(self) -> str:
        return f"<Flag in F_{self.q}^{self.n}>"


def flag_count(n: int, q: int) -> int:
    """Number of complete flags in F_q^n: the q-factorial [1][2]...[n] at q."""
    _require_prime(q)
    count = 1
    for k in range(1, n + 1):
        count *= q_int(k)(q)
    return count


def enumerate_flags(n: int, q: int, budget: int = FLAG_BUDGET) -> tuple[Flag, ...]:
    """All complete flags in F_q^n, in a deterministic order.

    The predicted count is checked against `budget` before any
    enumeration starts; BudgetExceeded is raised when it would not fit.
    """
    _require_prime(q)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    total = flag_count(n, q)
    if total > budget:
        raise BudgetExceeded(
            f"F_{q}^{n} has {total} complete flags, over the budget of {budget}"
        )
    flags: list[Flag] = []
    steps: list[Subspace] = []

    def grow() -> None:
        k = len(steps)
        if k == n - 1:
            flags.append(Flag._make(q, n, tuple(steps)))
            return
        rows = steps[-1].rows if steps else ()
        pivots = {next(i for i, x in enumerate(r) if x) for r in rows}
        free = [i for i in range(n) if i not in pivots]
        for ip, p in enumerate(free):
            for tail in itertools.product(range(q), repeat=len(free) - ip - 1):
                v = [0] * n
                v[p] = 1
                for j, c in enumerate(tail):
                    v[free[ip + 1 + j]] = c
                new_rows = _rref(rows + (tuple(v),), q)
                steps.append(Subspace._make(n, q, new_rows))
                grow()
                steps.pop()

    grow()
    if len(flags) != total:
        raise ArithmeticError(f"enumerated {len(flags)} flags, expected {total}")
    return tuple(flags)


# ---------------------------------------------------------------------------
# relative position


def _intersection_dim(a: Subspace, b: Subspace) -> int:
    stacked = _rref(a.rows + b.rows, a.q)
    return a.dim + b.dim - len(stacked)


def _check_pair(w_flag: Flag, v_flag: Flag) -> None:
    if (w_flag.q, w_flag.n) != (v_flag.q, v_flag.n):
        raise ValueError("flags live in different spaces")


def relative_position(w_flag: Flag, v_flag: Flag) -> Perm:
    """The permutation labeling the GL_n(F_q)-orbit of the ordered pair.

    Computed literally from the intersection dimensions
    d_{ij} = dim(W_i cap V_j): the label w sends i to the unique j with
    d_{ij} - d_{i-1,j} - d_{i,j-1} + d_{i-1,j-1} = 1.  Satisfies
    relative_position(wE, E) == w for the coordinate flag E, and
    swapping the arguments inverts the label.
    """
    _check_pair(w_flag, v_flag)
    n = w_flag.n
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        wi = w_flag.step(i)
        for j in range(1, n + 1):
            d[i][j] = _intersection_dim(wi, v_flag.step(j))
    image = []
    for i in range(1, n + 1):
        hits = [
            j
            for j in range(1, n + 1)
            if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1
        ]
        if len(hits) != 1:
            raise ArithmeticError(f"jump pattern of row {i} is not a permutation row")
        image.append(hits[0])
    return Perm(tuple(image))


def representative_pair(w: Perm, q: int) -> tuple[Flag, Flag]:
    """The standard representative (wE, E) of the orbit labeled w."""
    _require_prime(q)
    return Flag.permuted(w, q), Flag.standard(w.n, q)


# ---------------------------------------------------------------------------
# per-(n, q) geometry: flag list, labels, convolution tensor


class _Geometry:
    """Flags, orbit labels, and the convolution structure tensor for one (n, q).

    tensor()[z] maps a packed pair index x * n! + y to the number of
    middle flags M with relative_position(A, M) labeled x and
    relative_position(M, C) labeled y, where (A, C) is the
    representative pair of orbit z.  That count is exactly the
    structure constant of the convolution algebra, and one pass over it
    evaluates any convolution product.
    """

    def __init__(self, n: int, q: int, budget: int) -> None:
        self.n = n
        self.q = q
        self.perms = enumerate_perms(n)
        self.nperms = len(self.perms)
        self.index = {w.image: i for i, w in enumerate(self.perms)}
        self.flags = enumerate_flags(n, q, budget)
        if q == 2:
            chains = [[_pack2(r) for r in f.chain_rows()] for f in self.flags]
            self._inv_rows = [_inv2(c, n) for c in chains]
            self._labels_to_std = [self.index[_profile2(c)] for c in chains]
            self._chains = chains
        else:
            chains = [[list(r) for r in f.chain_rows()] for f in self.flags]
            self._inv_rows = [_invert_mod(c, q) for c in chains]
            self._labels_to_std = [self.index[_profile_generic(c, q)] for c in chains]
            self._chains = chains
        self._tensor: list[dict[int, int]] | None = None
        self._debug_checked = False

    def tensor(self, debug: bool = False) -> list[dict[int, int]]:
        if self._tensor is None:
            self._tensor = self._build(None)
        if debug and not self._debug_checked:
            other = self._build(self._debug_transform())
            if other != self._tensor:
                raise ArithmeticError(
                    "structure tensor differs between two orbit representatives"
                )
            self._debug_checked = True
        return self._tensor

    def _debug_transform(self) -> list[list[int]] | list[int]:
        # a fixed invertible matrix that moves the coordinate flags:
        # all-ones superdiagonal unipotent with its rows rotated
        n, q = self.n, self.q
        uni = [[0] * n for _ in range(n)]
        for i in range(n):
            uni[i][i] = 1
            if i + 1 < n:
                uni[i][i + 1] = 1
        rotated = [uni[(i + 1) % n] for i in range(n)]
        if q == 2:
            return [_pack2(r) for r in rotated]
        return rotated

    def _build(self, transform) -> list[dict[int, int]]:
        n, q = self.n, self.q
        nperms = self.nperms
        index = self.index
        picks = [tuple(x - 1 for x in w.image) for w in self.perms]
        out: list[dict[int, int]] = [dict() for _ in range(nperms)]
        if q == 2:
            ginv = _inv2(transform, n) if transform is not None else None
            for fi in range(len(self.flags)):
                inv = self._inv_rows[fi]
                if transform is None:
                    y = self._labels_to_std[fi]
                else:
                    # representative pair moved to (g wE, g E)
                    inv = _matmul2(transform, inv)
                    y = index[_profile2(_matmul2(self._chains[fi], ginv))]
                for zi in range(nperms):
                    img = _profile2([inv[k] for k in picks[zi]])
                    key = index[img] * nperms + y
                    table = out[zi]
                    table[key] = table.get(key, 0) + 1
        else:
            ginv = _invert_mod(transform, q) if transform is not None else None
            for fi in range(len(self.flags)):
                inv = self._inv_rows[fi]
                if transform is None:
                    y = self._labels_to_std[fi]
                else:
                    inv = _matmul_mod(transform, inv, q)
                    y = index[_profile_generic(_matmul_mod(self._chains[fi], ginv, q), q)]
                for zi in range(nperms):
                    img = _profile_generic([inv[k] for k in picks[zi]], q)
                    key = index[img] * nperms + y
                    table = out[zi]
                    table[key] = table.get(key, 0) + 1
        return out


_GEOMETRY: dict[tuple[int, int], _Geometry] = {}


def _geometry(n: int, q: int, budget: int) -> _Geometry:
    total = flag_count(n, q)
    if total > budget:
        raise BudgetExceeded(
            f"F_{q}^{n} has {total} complete flags, over the budget of {budget}"
        )
    key = (n, q)
    geo = _GEOMETRY.get(key)
    if geo is None:
        geo = _Geometry(n, q, budget)
        _GEOMETRY[key] = geo
    return geo


# ---------------------------------------------------------------------------
# orbit functions


class OrbitFn:
    """A GL-invariant integer function on flag pairs, stored by orbit label."""

    __slots__ = ("n", "q", "values")

    def __init__(self, n: int, q: int, values: Mapping[Perm, int] = ()) -> None:
        items = values.items() if isinstance(values, Mapping) else values
        vals: dict[Perm, int] = {}
        for w, c in items:
            if w.n != n:
                raise ValueError(f"label {w!r} does not live in S_{n}")
            if not isinstance(c, int):
                raise TypeError(f"integer values required, got {c!r}")
            if c:
                vals[w] = c
        self.n = n
        self.q = q
        self.values = vals

    @classmethod
    def indicator(cls, w: Perm, q: int) -> "OrbitFn":
        return cls(w.n, q, {w: 1})

    def __getitem__(self, w: Perm) -> int:
        return self.values.get(w, 0)

    def support(self) -> list[Perm]:
        return sorted(self.values, key=lambda w: w.image)

    def is_zero(self) -> bool:
        return not self.values

    def _check(self, other: "OrbitFn") -> None:
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("orbit functions over different flag varieties")

    def __add__(self, other: "OrbitFn") -> "OrbitFn":
        if not isinstance(other, OrbitFn):
            return NotImplemented
        self._check(other)
        out = dict(self.values)
        for w, c in other.values.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return OrbitFn(self.n, self.q, out)

    def __sub__(self, other: "OrbitFn") -> "OrbitFn":
        if not isinstance(other, OrbitFn):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, c: int) -> "OrbitFn":
        if not isinstance(c, int):
            return NotImplemented
        return OrbitFn(self.n, self.q, {w: v * c for w, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrbitFn):
            return NotImplemented
        return (self.n, self.q, self.values) == (other.n, other.q, other.values)

    def __str__(self) -> str:
        if not self.values:
            return "0"
        parts = []
        for w in self.support():
            c = self.values[w]
            basis = "e[" + " ".join(str(x) for x in w.image) + "]"
            parts.append(basis if c == 1 else f"{c}*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<OrbitFn n={self.n} q={self.q} with {len(self.values)} orbits>"


def _is_f1_pair(w_flag: Flag, v_flag: Flag) -> bool:
    # agree up to level g-1, then every step of W sits inside the next
    # step of V without equality, for some g
    n = w_flag.n
    for g in range(1, n + 1):
        if all(w_flag.step(r) == v_flag.step(r) for r in range(1, g)) and all(
            w_flag.step(r) != v_flag.step(r) and w_flag.step(r) <= v_flag.step(r + 1)
            for r in range(g, n)
        ):
            return True
    return False


def f1(n: int, q: int) -> OrbitFn:
    """The base orbit function: value 1 on the interleaving pairs.

    Its support turns out to be exactly the orbits of the cycles
    (g, g+1, ..., n), matching the support of tau.
    """
    _require_prime(q)
    std = Flag.standard(n, q)
    vals = {w: 1 for w in enumerate_perms(n) if _is_f1_pair(Flag.permuted(w, q), std)}
    return OrbitFn(n, q, vals)


def in_x_t(w_flag: Flag, v_flag: Flag, t: int) -> bool:
    """Membership of the pair in the set X_t.

    The pair lies in X_t when the minimal inclusion indices
    m_r = min{ i : W_r <= V_i } are strictly increasing for
    r = 1, ..., n - t.  For t = n the condition is empty.
    """
    _check_pair(w_flag, v_flag)
    n = w_flag.n
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}")
    prev = 0
    for r in range(1, n - t + 1):
        wr = w_flag.step(r)
        m = next(
            (i for i in range(max(prev, 1), n + 1) if wr <= v_flag.step(i)), None
        )
        if m is None or m == prev:
            return False
        prev = m
    return True


def f_t(n: int, q: int, t: int) -> OrbitFn:
    """The indicator of X_t as an orbit function; zero for t > n."""
    _require_prime(q)
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    if t > n:
        return OrbitFn(n, q)
    std = Flag.standard(n, q)
    vals = {
        w: 1 for w in enumerate_perms(n) if in_x_t(Flag.permuted(w, q), std, t)
    }
    return OrbitFn(n, q, vals)


def convolve(
    f: OrbitFn, g: OrbitFn, budget: int = FLAG_BUDGET, debug: bool = False
) -> OrbitFn:
    """(f * g)(W, V) = sum over middle flags M of f(W, M) g(M, V).

    Orbit-invariant, so it is evaluated on one representative pair per
    orbit via the cached structure tensor.  With debug=True the tensor
    is recomputed once from a second, non-coordinate representative of
    every orbit and the two are required to agree.
    """
    f._check(g)
    geo = _geometry(f.n, f.q, budget)
    table = geo.tensor(debug)
    nperms = geo.nperms
    perms = geo.perms
    fv = [f.values.get(w, 0) for w in perms]
    gv = [g.values.get(w, 0) for w in perms]
    out: dict[Perm, int] = {}
    for zi, counts in enumerate(table):
        acc = 0
        for key, cnt in counts.items():
            x, y = divmod(key, nperms)
            a = fv[x]
            if a:
                b = gv[y]
                if b:
                    acc += cnt * a * b
        if acc:
            out[perms[zi]] = acc
    return OrbitFn(f.n, f.q, out)


# ---------------------------------------------------------------------------
# verifications


def _first_mismatch(a: OrbitFn, b: OrbitFn) -> str:
    for w in sorted(set(a.values) | set(b.values), key=lambda p: p.image):
        if a[w] != b[w]:
            return f"orbit {w}: {a[w]} != {b[w]}"
    return "none"


def verify_lemma3(
    n: int,
    q: int,
    t_values: Iterable[int] | None = None,
    budget: int = FLAG_BUDGET,
    debug: bool = False,
) -> CheckResult:
    """Check the convolution product rule f1 * f_t = [t]_q f_t + q^t f_{t+1}.

    By default t runs over [1, n+2], past the collapse point f_n =
    f_{n-1} and into the range where both sides vanish.
    """
    _require_prime(q)
    ts = sorted(set(t_values)) if t_values is not None else list(range(1, n + 3))
    if any(t < 1 for t in ts):
        raise ValueError(f"t values must be >= 1, got {ts}")
    base = f1(n, q)
    needed = sorted(set(ts) | {t + 1 for t in ts})
    fs = {t: f_t(n, q, t) for t in needed}
    rows = []
    ok_all = True
    for t in ts:
        lhs = convolve(base, fs[t], budget, debug)
        rhs = q_int(t)(q) * fs[t] + (q ** t) * fs[t + 1]
        ok = lhs == rhs
        row: dict[str, object] = {"t": t, "pass": ok}
        if not ok:
            row["witness"] = _first_mismatch(lhs, rhs)
        rows.append(row)
        ok_all = ok_all and ok
    return CheckResult("lemma3", {"n": n, "q": q}, ok_all, rows)


def verify_factorization(
    n: int,
    q: int,
    budget: int = FLAG_BUDGET,
    debug: bool = False,
) -> CheckResult:
    """Check the telescoping factorization and the full annihilation.

    For t in [1, n-1]:
        q^(t(t-1)/2) f_t == f1 * (f1 - [1]_q f0) * ... * (f1 - [t-1]_q f0)
    then the collapse f_{n-1} == f_n, and finally the full product with
    the factors (f1 - [k]_q f0) over k in [1, n] \\ {n-1} vanishes.
    """
    _require_prime(q)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    f0 = OrbitFn.indicator(Perm.identity(n), q)
    base = f1(n, q)
    rows = []
    ok_all = True
    prod = base
    for t in range(1, n):
        if t > 1:
            prod = convolve(prod, base - q_int(t - 1)(q) * f0, budget, debug)
        lhs = (q ** (t * (t - 1) // 2)) * f_t(n, q, t)
        ok = lhs == prod
        row: dict[str, object] = {"t": t, "pass": ok}
        if not ok:
            row["witness"] = _first_mismatch(lhs, prod)
        rows.append(row)
        ok_all = ok_all and ok
    collapse_ok = f_t(n, q, n - 1) == f_t(n, q, n)
    rows.append({"check": "f_(n-1) == f_n", "pass": collapse_ok})
    ok_all = ok_all and collapse_ok
    # continue the chain with the k = n factor (k = n-1 is skipped, the
    # same factor layout as the Hecke-side product)
    full = convolve(prod, base - q_int(n)(q) * f0, budget, debug)
    zero_ok = full.is_zero()
    row = {"check": "full product == 0", "pass": zero_ok}
    if not zero_ok:
        row["witness"] = _first_mismatch(full, OrbitFn(n, q))
    rows.append(row)
    ok_all = ok_all and zero_ok
    return CheckResult("factorization", {"n": n, "q": q}, ok_all, rows)


def verify_span_commutativity(
    n: int,
    q: int,
    budget: int = FLAG_BUDGET,
    debug: bool = False,
) -> CheckResult:
    """Check that {f_t} and the convolution powers of f1 span the same
    lattice of functions, with the triangular change of basis, and that
    all the f_t commute.

    The expansion f1^t = sum_s C[t][s] f_s is computed by the product
    rule recursion; its diagonal must be q^(t(t-1)/2), every expansion
    must reproduce the actual convolution power, the three integer
    matrices (f_t rows, power rows, both stacked) must share rank n,
    and f_s * f_t must equal f_t * f_s for all s, t in [0, n].
    """
    _require_prime(q)
    fs = [f_t(n, q, t) for t in range(n + 1)]
    base = f1(n, q)
    rows = []
    ok_all = True

    powers = [OrbitFn.indicator(Perm.identity(n), q)]
    for _ in range(n):
        powers.append(convolve(base, powers[-1], budget, debug))

    # C[t][s] over Z by the recursion C[t+1][s] = [s] C[t][s] + q^(s-1) C[t][s-1]
    coeffs: list[dict[int, int]] = [{0: 1}]
    for t in range(n):
        prev = coeffs[-1]
        nxt: dict[int, int] = {}
        for s, c in prev.items():
            if s <= n:
                v = q_int(s)(q) * c
                if v:
                    nxt[s] = nxt.get(s, 0) + v
            if s + 1 <= n:
                nxt[s + 1] = nxt.get(s + 1, 0) + (q ** s) * c
        coeffs.append(nxt)

    for t in range(n + 1):
        expansion = OrbitFn(n, q)
        for s, c in coeffs[t].items():
            expansion = expansion + c * fs[s]
        ok = expansion == powers[t]
        row: dict[str, object] = {"check": f"f1^{t} expansion", "pass": ok}
        if not ok:
            row["witness"] = _first_mismatch(expansion, powers[t])
        rows.append(row)
        ok_all = ok_all and ok
        diag_ok = coeffs[t].get(t, 0) == q ** (t * (t - 1) // 2)
        rows.append({"check": f"diagonal C[{t}][{t}]", "pass": diag_ok})
        ok_all = ok_all and diag_ok

    perms = enumerate_perms(n)
    mat_f = [[f.values.get(w, 0) for w in perms] for f in fs]
    mat_p = [[p.values.get(w, 0) for w in perms] for p in powers]
    r_f, r_p, r_all = rank(mat_f), rank(mat_p), rank(mat_f + mat_p)
    span_ok = r_f == r_p == r_all == n
    rows.append(
        {"check": "span ranks", "rank_f": r_f, "rank_powers": r_p,
         "rank_union": r_all, "expected": n, "pass": span_ok}
    )
    ok_all = ok_all and span_ok

    comm_ok = True
    witness = "none"
    for s in range(n + 1):
        for t in range(s + 1, n + 1):
            left = convolve(fs[s], fs[t], budget, debug)
            right = convolve(fs[t], fs[s], budget, debug)
            if left != right:
                comm_ok = False
                witness = f"s={s}, t={t}: " + _first_mismatch(left, right)
                break
        if not comm_ok:
            break
    row = {"check": "commutativity of all f_s, f_t", "pass": comm_ok}
    if not comm_ok:
        row["witness"] = witness
    rows.append(row)
    ok_all = ok_all and comm_ok
    return CheckResult("span", {"n": n, "q": q}, ok_all, rows)


def compare_structure_constants(
    n: int,
    q: int,
    budget: int = FLAG_BUDGET,
    debug: bool = False,
) -> CheckResult:
    """Match convolution structure constants against the Hecke algebra at q.

    For every ordered pair (x, y) of orbit labels the table of
    convolve(e_x, e_y) is compared against the basis product expansions
    T_x T_y and T_y T_x specialized at q.  One of the two operand
    orders must reproduce every one of the n!^2 tables; which one holds
    is reported as "orientation" ("product" means convolve follows the
    T_x T_y order, "reversed" the opposite; when the algebra is
    commutative both hold and "product" is reported).  Additionally f1
    must coincide with tau specialized at q.
    """
    _require_prime(q)
    geo = _geometry(n, q, budget)
    table = geo.tensor(debug)
    perms = geo.perms
    nperms = geo.nperms
    index = {w: i for i, w in enumerate(perms)}

    conv: dict[tuple[int, int], dict[int, int]] = {}
    for zi, counts in enumerate(table):
        for key, cnt in counts.items():
            x, y = divmod(key, nperms)
            conv.setdefault((x, y), {})[zi] = cnt

    hecke: dict[tuple[int, int], dict[int, int]] = {}
    for xi, x in enumerate(perms):
        bx = HeckeElt.basis(x)
        for yi, y in enumerate(perms):
            prod = mul(bx, HeckeElt.basis(y)).specialize(q)
            hecke[(xi, yi)] = {index[w]: c for w, c in prod.items()}

    product_matches = 0
    reversed_matches = 0
    first_product_miss = "none"
    first_reversed_miss = "none"
    for xi in range(nperms):
        for yi in range(nperms):
            c = conv.get((xi, yi), {})
            if c == hecke[(xi, yi)]:
                product_matches += 1
            elif first_product_miss == "none":
                first_product_miss = f"pair ({perms[xi]}, {perms[yi]})"
            if c == hecke[(yi, xi)]:
                reversed_matches += 1
            elif first_reversed_miss == "none":
                first_reversed_miss = f"pair ({perms[xi]}, {perms[yi]})"

    total = nperms * nperms
    if product_matches == total:
        orientation = "product"
    elif reversed_matches == total:
        orientation = "reversed"
    else:
        orientation = "inconsistent"

    f1_match = f1(n, q).values == tau(n).specialize(q)

    passed = orientation != "inconsistent" and f1_match
    rows = [
        {
            "pairs": total,
            "product_order_matches": product_matches,
            "reversed_order_matches": reversed_matches,
            "orientation": orientation,
            "pass": orientation != "inconsistent",
        },
        {"check": "f1 == specialize(tau, q)", "pass": f1_match},
    ]
    if orientation == "inconsistent":
        rows[0]["witness"] = (
            f"product order first miss {first_product_miss}; "
            f"reversed order first miss {first_reversed_miss}"
        )
    return CheckResult("structure-constants", {"n": n, "q": q}, passed, rows)
