"""Algebras, bimodules and equivariant morphisms over the two-element field.

Vectors are Python ints used as bitmasks (bit i is the coefficient of basis
vector i).  A linear map is a tuple of column images, one int per source
basis vector.  Pure tensors e_i (x) e'_j are indexed row-major as
``i * dim' + j``; relative tensor products are the quotient by the reduced
row-echelon span of the middle-action relations, with the non-pivot columns as
the representative basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import DblcatError, FinCategory, FinDoubleCategory, Token, ValidationReport

Matrix = Tuple[int, ...]


class DimensionMismatch(DblcatError):
    pass


class MiddleMismatch(DblcatError):
    pass


class InconsistentTagging(DblcatError):
    pass


# --------------------------------------------------------------------------
# linear algebra over F2


def apply(m: Matrix, v: int) -> int:
    out, j = 0, 0
    while v:
        if v & 1:
            out ^= m[j]
        v >>= 1
        j += 1
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """a after b."""
    return tuple(apply(a, c) for c in b)


def identity(n: int) -> Matrix:
    return tuple(1 << i for i in range(n))


def zero(rows: int, cols: int) -> Matrix:
    return (0,) * cols


def rref(vectors: Iterable[int]) -> Tuple[int, ...]:
    """Fully reduced echelon basis, pivot = lowest set bit, sorted by pivot."""
    rows: Dict[int, int] = {}
    for v in vectors:
        v = reduce_vec(v, rows)
        if not v:
            continue
        p = v & -v
        for q, r in list(rows.items()):
            if r & p:
                rows[q] = r ^ v
        rows[p] = v
    return tuple(rows[p] for p in sorted(rows))


def reduce_vec(v: int, rows) -> int:
    if isinstance(rows, dict):
        items = rows.items()
    else:
        items = ((r & -r, r) for r in rows)
    for p, r in items:
        if v & p:
            v ^= r
    return v


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def contains(space: Tuple[int, ...], vectors: Iterable[int]) -> bool:
    """Whether every vector lies in the span given by an rref basis."""
    return all(reduce_vec(v, space) == 0 for v in vectors)


def inverse(m: Matrix, n: int) -> Matrix:
    """Inverse of an invertible n x n matrix given by columns."""
    # row-reduce [m | I] working on rows
    rows = []
    for i in range(n):
        r = 0
        for j, c in enumerate(m):
            if c >> i & 1:
                r |= 1 << j
        rows.append((r, 1 << i))
    for col in range(n):
        piv = next((k for k in range(col, n) if rows[k][0] >> col & 1), None)
        if piv is None:
            raise DimensionMismatch("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        for k in range(n):
            if k != col and rows[k][0] >> col & 1:
                rows[k] = (rows[k][0] ^ rows[col][0], rows[k][1] ^ rows[col][1])
    inv_rows = [r[1] for r in rows]
    return tuple(sum(((inv_rows[i] >> j & 1) << i) for i in range(n)) for j in range(n))


def image(m: Matrix) -> Tuple[int, ...]:
    return rref(m)


def kron(u: int, v: int, d2: int) -> int:
    out, i = 0, 0
    while u:
        if u & 1:
            out |= v << (i * d2)
        u >>= 1
        i += 1
    return out


# --------------------------------------------------------------------------
# algebras and bimodules


@dataclass(frozen=True)
class F2Algebra:
    dim: int
    mul: Tuple[Tuple[int, ...], ...]
    unit: int
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))

    def times(self, x: int, y: int) -> int:
        out = 0
        for i in range(self.dim):
            if x >> i & 1:
                for j in range(self.dim):
                    if y >> j & 1:
                        out ^= self.mul[i][j]
        return out

    def is_valid(self) -> bool:
        d = self.dim
        if d < 1 or len(self.mul) != d or any(len(r) != d for r in self.mul):
            return False
        basis = [1 << i for i in range(d)]
        if any(self.times(self.unit, b) != b or self.times(b, self.unit) != b for b in basis):
            return False
        return all(self.times(self.times(a, b), c) == self.times(a, self.times(b, c))
                   for a in basis for b in basis for c in basis)

    def __eq__(self, other):
        return isinstance(other, F2Algebra) and (self.dim, self.mul, self.unit) == (other.dim, other.mul, other.unit)

    def __hash__(self):
        return hash((self.dim, self.mul, self.unit))


def field2() -> F2Algebra:
    return F2Algebra(1, ((1,),), 1, "F2")


def split2() -> F2Algebra:
    """F2 x F2 with basis e1, e2."""
    return F2Algebra(2, ((1, 0), (0, 2)), 3, "F2xF2")


def dual_numbers() -> F2Algebra:
    """F2[x]/x^2 with basis 1, x."""
    return F2Algebra(2, ((1, 2), (2, 0)), 1, "F2[x]/x^2")


def field4() -> F2Algebra:
    """F4 = F2[x]/(x^2+x+1) with basis 1, x."""
    return F2Algebra(2, ((1, 2), (2, 3)), 1, "F4")


def algebras_up_to_dim2() -> List[F2Algebra]:
    """One representative of every unital algebra of dimension <= 2."""
    return [field2(), split2(), dual_numbers(), field4()]


def is_algebra_morphism(A: F2Algebra, C: F2Algebra, f: Matrix) -> bool:
    if len(f) != A.dim or any(c >> C.dim for c in f):
        return False
    if apply(f, A.unit) != C.unit:
        return False
    return all(apply(f, A.mul[i][j]) == C.times(f[i], f[j])
               for i in range(A.dim) for j in range(A.dim))


def algebra_morphisms(A: F2Algebra, C: F2Algebra) -> List[Matrix]:
    out = []
    for cols in product(range(1 << C.dim), repeat=A.dim):
        if is_algebra_morphism(A, C, cols):
            out.append(tuple(cols))
    return out


@dataclass(frozen=True)
class F2Bimodule:
    left: F2Algebra
    right: F2Algebra
    dim: int
    lact: Tuple[Tuple[int, ...], ...]  # lact[i][j] = a_i . m_j
    ract: Tuple[Tuple[int, ...], ...]  # ract[i][j] = m_j . b_i

    def __post_init__(self):
        object.__setattr__(self, "lact", tuple(tuple(r) for r in self.lact))
        object.__setattr__(self, "ract", tuple(tuple(r) for r in self.ract))

    def left_matrix(self, a: int) -> Matrix:
        out = [0] * self.dim
        for i in range(self.left.dim):
            if a >> i & 1:
                out = [x ^ y for x, y in zip(out, self.lact[i])]
        return tuple(out)

    def right_matrix(self, b: int) -> Matrix:
        out = [0] * self.dim
        for i in range(self.right.dim):
            if b >> i & 1:
                out = [x ^ y for x, y in zip(out, self.ract[i])]
        return tuple(out)

    def act(self, a: int, m: int, b: int) -> int:
        return apply(self.left_matrix(a), apply(self.right_matrix(b), m))

    def is_valid(self) -> bool:
        A, B, d = self.left, self.right, self.dim
        if len(self.lact) != A.dim or len(self.ract) != B.dim:
            return False
        if any(len(r) != d or any(c >> d for c in r) for r in self.lact + self.ract):
            return False
        I = identity(d)
        L = [self.left_matrix(1 << i) for i in range(A.dim)]
        R = [self.right_matrix(1 << i) for i in range(B.dim)]
        if self.left_matrix(A.unit) != I or self.right_matrix(B.unit) != I:
            return False
        for i in range(A.dim):
            for j in range(A.dim):
                if self.left_matrix(A.mul[i][j]) != matmul(L[i], L[j]):
                    return False
        for i in range(B.dim):
            for j in range(B.dim):
                if self.right_matrix(B.mul[i][j]) != matmul(R[j], R[i]):
                    return False
        return all(matmul(l, r) == matmul(r, l) for l in L for r in R)


def regular_bimodule(A: F2Algebra) -> F2Bimodule:
    """A as a bimodule over itself."""
    lact = tuple(tuple(A.mul[i][j] for j in range(A.dim)) for i in range(A.dim))
    ract = tuple(tuple(A.mul[j][i] for j in range(A.dim)) for i in range(A.dim))
    return F2Bimodule(A, A, A.dim, lact, ract)


def zero_bimodule(A: F2Algebra, B: F2Algebra) -> F2Bimodule:
    return F2Bimodule(A, B, 0, ((),) * A.dim, ((),) * B.dim)


@dataclass(frozen=True)
class EquivariantMorphism:
    """(f, phi, g): M -> N with f: left(M) -> left(N) and g: right(M) -> right(N)."""
    source: F2Bimodule
    target: F2Bimodule
    f: Matrix
    phi: Matrix
    g: Matrix

    def __post_init__(self):
        for name in ("f", "phi", "g"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


def _check_dims(t: EquivariantMorphism):
    M, N = t.source, t.target
    if len(t.phi) != M.dim or any(c >> N.dim for c in t.phi):
        raise DimensionMismatch("phi has the wrong shape")
    if len(t.f) != M.left.dim or any(c >> N.left.dim for c in t.f):
        raise DimensionMismatch("f has the wrong shape")
    if len(t.g) != M.right.dim or any(c >> N.right.dim for c in t.g):
        raise DimensionMismatch("g has the wrong shape")


def is_equivariant(t: EquivariantMorphism) -> bool:
    _check_dims(t)
    M, N = t.source, t.target
    if not is_algebra_morphism(M.left, N.left, t.f) or not is_algebra_morphism(M.right, N.right, t.g):
        return False
    for i in range(M.left.dim):
        for j in range(M.dim):
            if apply(t.phi, M.lact[i][j]) != N.act(t.f[i], t.phi[j], N.right.unit):
                return False
    for k in range(M.right.dim):
        for j in range(M.dim):
            if apply(t.phi, M.ract[k][j]) != N.act(N.left.unit, t.phi[j], t.g[k]):
                return False
    return True


def equivariant_maps(M: F2Bimodule, N: F2Bimodule, f: Matrix, g: Matrix) -> List[EquivariantMorphism]:
    out = []
    for cols in product(range(1 << N.dim), repeat=M.dim):
        t = EquivariantMorphism(M, N, f, cols, g)
        if is_equivariant(t):
            out.append(t)
    return out


def vertical_compose(t2: EquivariantMorphism, t1: EquivariantMorphism) -> EquivariantMorphism:
    """t2 after t1."""
    if t1.target != t2.source:
        raise DimensionMismatch("morphisms are not composable")
    return EquivariantMorphism(t1.source, t2.target, matmul(t2.f, t1.f),
                               matmul(t2.phi, t1.phi), matmul(t2.g, t1.g))


def identity_morphism(M: F2Bimodule) -> EquivariantMorphism:
    return EquivariantMorphism(M, M, identity(M.left.dim), identity(M.dim), identity(M.right.dim))


def hid_morphism(A: F2Algebra, C: F2Algebra, f: Matrix) -> EquivariantMorphism:
    """(f, f, f) from A to C, each viewed as a bimodule over itself."""
    return EquivariantMorphism(regular_bimodule(A), regular_bimodule(C), f, f, f)


# --------------------------------------------------------------------------
# cyclic submodules and the 2-subcyclic predicate


def generated_submodule(N: F2Bimodule, n: int, lefts: Sequence[int], rights: Sequence[int]) -> Tuple[int, ...]:
    """rref basis of span{ l . n . r } for l in ``lefts``, r in ``rights``."""
    return rref(N.act(l, n, r) for l in lefts for r in rights)


def _acting(N: F2Bimodule, f: Matrix, g: Matrix, sides: str):
    """Left and right acting elements for the A-side and the B-side submodules."""
    one_l, one_r = [N.left.unit], [N.right.unit]
    all_l = [1 << i for i in range(N.left.dim)]
    all_r = [1 << i for i in range(N.right.dim)]
    if sides == "bi":
        return (list(f), list(g)), (all_l, all_r)
    if sides == "left":
        return (list(f), one_r), (all_l, one_r)
    if sides == "right":
        return (one_l, list(g)), (one_l, all_r)
    raise ValueError(f"unknown sides {sides!r}")


def is_2_subcyclic(t: EquivariantMorphism, sides: str = "bi") -> bool:
    """Im(phi) lies in the A-cyclic submodule generated by some n, which lies in a
    B-cyclic submodule generated by some n'.  Both generators range over all of N.

    ``sides="bi"`` generates sub-bimodules (span of a.n.b); ``"left"`` and
    ``"right"`` use one-sided cyclic submodules instead.
    """
    _check_dims(t)
    return subcyclic_image(t.target, t.f, t.g, image(t.phi), sides)


def subcyclic_image(N: F2Bimodule, f: Matrix, g: Matrix, im: Tuple[int, ...], sides: str = "bi") -> bool:
    (al, ar), (bl, br) = _acting(N, f, g, sides)
    A_side = [generated_submodule(N, n, al, ar) for n in range(1 << N.dim)]
    B_side = [generated_submodule(N, n, bl, br) for n in range(1 << N.dim)]
    for L in A_side:
        if contains(L, im) and any(contains(K, L) for K in B_side):
            return True
    return False


# --------------------------------------------------------------------------
# relative tensor products


@dataclass(frozen=True)
class _TensorData:
    module: F2Bimodule
    relations: Tuple[int, ...]
    free: Tuple[int, ...]  # pure-tensor indices forming the quotient basis

    def project(self, v: int) -> int:
        v = reduce_vec(v, self.relations)
        out = 0
        for k, col in enumerate(self.free):
            if v >> col & 1:
                out |= 1 << k
        return out


@lru_cache(maxsize=None)
def _tensor(M: F2Bimodule, M2: F2Bimodule) -> _TensorData:
    if M.right != M2.left:
        raise DimensionMismatch("middle algebras differ")
    d1, d2 = M.dim, M2.dim
    B = M.right
    rels = []
    for i in range(d1):
        for j in range(d2):
            for k in range(B.dim):
                rels.append(kron(M.ract[k][i], 1 << j, d2) ^ kron(1 << i, M2.lact[k][j], d2))
    R = rref(rels)
    pivots = {(r & -r).bit_length() - 1 for r in R}
    free = tuple(c for c in range(d1 * d2) if c not in pivots)
    data = _TensorData(None, R, free)
    lact = []
    for a in range(M.left.dim):
        lact.append(tuple(data.project(kron(M.lact[a][c // d2], 1 << (c % d2), d2)) for c in free))
    ract = []
    for b in range(M2.right.dim):
        ract.append(tuple(data.project(kron(1 << (c // d2), M2.ract[b][c % d2], d2)) for c in free))
    mod = F2Bimodule(M.left, M2.right, len(free), tuple(lact), tuple(ract))
    return _TensorData(mod, R, free)


def tensor_bimodules(M: F2Bimodule, M2: F2Bimodule) -> F2Bimodule:
    """M (x)_B M2 for an A-B bimodule M and a B-C bimodule M2."""
    return _tensor(M, M2).module


def tensor_morphisms(t: EquivariantMorphism, t2: EquivariantMorphism) -> EquivariantMorphism:
    """(f, phi, g) (x) (g, phi2, h) = (f, phi (x)_g phi2, h)."""
    _check_dims(t)
    _check_dims(t2)
    if t.g != t2.f or t.target.right != t2.target.left or t.source.right != t2.source.left:
        raise MiddleMismatch("middle algebra morphisms differ")
    src, tgt = _tensor(t.source, t2.source), _tensor(t.target, t2.target)
    d2 = t2.source.dim
    e2 = t2.target.dim
    cols = tuple(tgt.project(kron(t.phi[c // d2], t2.phi[c % d2], e2)) for c in src.free)
    return EquivariantMorphism(src.module, tgt.module, t.f, cols, t2.g)


def left_unitor(M: F2Bimodule) -> Matrix:
    """A (x)_A M -> M, a (x) m -> a m."""
    data = _tensor(regular_bimodule(M.left), M)
    d = M.dim
    return tuple(M.lact[c // d][c % d] for c in data.free)


def right_unitor(M: F2Bimodule) -> Matrix:
    """M (x)_B B -> M, m (x) b -> m b."""
    data = _tensor(M, regular_bimodule(M.right))
    d = M.right.dim
    return tuple(M.ract[c % d][c // d] for c in data.free)


# --------------------------------------------------------------------------
# enumeration of bimodules


def _matrices(d: int) -> List[Matrix]:
    return [tuple(c) for c in product(range(1 << d), repeat=d)]


def _left_structures(A: F2Algebra, d: int) -> List[Tuple[Matrix, ...]]:
    out = []
    I = identity(d)
    for Ls in product(_matrices(d), repeat=A.dim):
        def lin(v):
            acc = [0] * d
            for i in range(A.dim):
                if v >> i & 1:
                    acc = [x ^ y for x, y in zip(acc, Ls[i])]
            return tuple(acc)
        if lin(A.unit) != I:
            continue
        if all(lin(A.mul[i][j]) == matmul(Ls[i], Ls[j]) for i in range(A.dim) for j in range(A.dim)):
            out.append(tuple(Ls))
    return out


def _right_structures(B: F2Algebra, d: int) -> List[Tuple[Matrix, ...]]:
    # a right B-module is a left module over the opposite algebra
    op = F2Algebra(B.dim, tuple(tuple(B.mul[j][i] for j in range(B.dim)) for i in range(B.dim)), B.unit)
    return _left_structures(op, d)


def bimodules(A: F2Algebra, B: F2Algebra, d: int) -> List[F2Bimodule]:
    """Every A-B bimodule structure on F2^d."""
    if d == 0:
        return [zero_bimodule(A, B)]
    out = []
    for Ls in _left_structures(A, d):
        for Rs in _right_structures(B, d):
            if all(matmul(l, r) == matmul(r, l) for l in Ls for r in Rs):
                out.append(F2Bimodule(A, B, d, Ls, Rs))
    return out


def _gl(d: int) -> List[Matrix]:
    return [m for m in _matrices(d) if rank(m) == d]


def _conj(P: Matrix, Pinv: Matrix, X: Matrix) -> Matrix:
    return matmul(P, matmul(X, Pinv))


def bimodule_classes(A: F2Algebra, B: F2Algebra, max_dim: int = 2) -> List[F2Bimodule]:
    """One bimodule per isomorphism class, dimensions 0..max_dim."""
    out = []
    for d in range(max_dim + 1):
        seen = set()
        gl = [(P, inverse(P, d)) for P in _gl(d)] if d else [((), ())]
        for M in bimodules(A, B, d):
            key = min((tuple(_conj(P, Pi, X) for X in M.lact), tuple(_conj(P, Pi, X) for X in M.ract))
                      for P, Pi in gl)
            if key not in seen:
                seen.add(key)
                out.append(M)
    return out


# --------------------------------------------------------------------------
# tensor closure of 2-subcyclic morphisms


def _mat(m: Matrix) -> str:
    return "[" + ".".join(format(c, "x") for c in m) + "]"


def _mod(M: F2Bimodule) -> str:
    return "L" + "".join(_mat(r) for r in M.lact) + "R" + "".join(_mat(r) for r in M.ract)


@dataclass
class ClosureStats:
    algebra_pairs: int = 0
    morphisms: int = 0
    subcyclic: int = 0
    pairs: int = 0
    representative_pairs: int = 0


def check_tensor_closure(max_dim: int = 2, algebras: Optional[List[F2Algebra]] = None, sides: str = "bi"):
    """For every f: A -> B and every pair of 2-subcyclic (f, phi, f): M -> N and
    (f, phi', f): M' -> N' with bimodules of dimension <= max_dim (one per
    isomorphism class), check that the relative tensor product is 2-subcyclic.

    Being 2-subcyclic depends only on the image, and the image of phi (x) phi'
    is the image of Im(phi) (x) Im(phi') in N (x)_B N'.  So one morphism per
    (N, Im phi) stands for all of them; ``pairs`` counts every pair covered.

    Returns (ValidationReport, ClosureStats).
    """
    algebras = algebras or algebras_up_to_dim2()
    rep, stats = ValidationReport(), ClosureStats()
    for A in algebras:
        mods_a = bimodule_classes(A, A, max_dim)
        for B in algebras:
            mods_b = bimodule_classes(B, B, max_dim)
            for f in algebra_morphisms(A, B):
                stats.algebra_pairs += 1
                reps: Dict[tuple, EquivariantMorphism] = {}
                n_good = 0
                for M in mods_a:
                    for N in mods_b:
                        for t in equivariant_maps(M, N, f, f):
                            stats.morphisms += 1
                            if is_2_subcyclic(t, sides):
                                n_good += 1
                                reps.setdefault((N, image(t.phi)), t)
                stats.subcyclic += n_good
                stats.pairs += n_good * n_good
                for t in reps.values():
                    for t2 in reps.values():
                        stats.representative_pairs += 1
                        tt = tensor_morphisms(t, t2)
                        if not is_2_subcyclic(tt, sides):
                            rep.add("lemma-6.3", (A.name, B.name, _mat(f), _mod(t.target), _mat(t.phi),
                                                  _mod(t2.target), _mat(t2.phi)),
                                    "2-subcyclic", "not 2-subcyclic")
    return rep, stats


# --------------------------------------------------------------------------
# finite fragments of the double category of algebras


@dataclass
class Fragment:
    double: FinDoubleCategory
    tag: Dict[Token, EquivariantMorphism]
    algebras: Dict[Token, F2Algebra]
    bimodules: Dict[Token, F2Bimodule]


def _sq_token(dom, cod, vs, vt, phi) -> str:
    return f"{dom}>{cod}/{vs}/{vt}/[{'.'.join(format(c, 'x') for c in phi)}]"


def build_fragment(algebras: Dict[Token, F2Algebra],
                   vmors: Dict[Token, Tuple[Token, Token, Matrix]],
                   hmors: Dict[Token, Tuple[Token, Token, F2Bimodule]],
                   hid_obj: Dict[Token, Token],
                   hcomp_h: Dict[Tuple[Token, Token], Token],
                   generators: Iterable[Tuple[Token, Token, Token, Token, Matrix]] = ()) -> Fragment:
    """Close a finite set of equivariant morphisms under both compositions.

    Identity vertical morphisms ``id_X`` are added.  Horizontal identities must be
    the regular bimodules.  Every declared horizontal composite must agree with
    the relative tensor product: exactly, or through the unit isomorphisms when a
    factor is a horizontal identity, or trivially when it is zero-dimensional.
    Generators are (dom, cod, vsrc, vtgt, phi) and must be equivariant.
    """
    vm = dict(vmors)
    for X in algebras:
        vm.setdefault("id_" + X, (X, X, identity(algebras[X].dim)))
    for v, (s, t, m) in vm.items():
        if not is_algebra_morphism(algebras[s], algebras[t], m):
            raise InconsistentTagging(f"{v} is not an algebra morphism")
    by_matrix = {(s, t, m): v for v, (s, t, m) in vm.items()}
    c0_comp = {}
    for g, (s2, t2, m2) in vm.items():
        for f, (s1, t1, m1) in vm.items():
            if t1 == s2:
                key = (s1, t2, matmul(m2, m1))
                if key not in by_matrix:
                    raise InconsistentTagging(f"composite of {g} and {f} is not declared")
                c0_comp[(g, f)] = by_matrix[key]
    c0 = FinCategory(list(algebras), list(vm), {v: x[0] for v, x in vm.items()},
                     {v: x[1] for v, x in vm.items()}, {X: "id_" + X for X in algebras}, c0_comp)
    mod = {a: m for a, (_, _, m) in hmors.items()}
    for X, a in hid_obj.items():
        if mod[a] != regular_bimodule(algebras[X]):
            raise InconsistentTagging(f"{a} is not the regular bimodule of {X}")
    hids = set(hid_obj.values())

    # comparison isomorphisms tensor(M_a, M_b) -> M_c
    comparison: Dict[Tuple[Token, Token], Matrix] = {}
    for b, (sb, tb, Mb) in hmors.items():
        for a, (sa, ta, Ma) in hmors.items():
            if ta != sb:
                continue
            c = hcomp_h.get((b, a))
            if c is None:
                raise InconsistentTagging(f"horizontal composite of {b} and {a} is not declared")
            T, Mc = tensor_bimodules(Ma, Mb), mod[c]
            if a in hids:
                iso = left_unitor(Mb)
            elif b in hids:
                iso = right_unitor(Ma)
            elif T == Mc:
                iso = identity(Mc.dim)
            elif T.dim == 0 and Mc.dim == 0:
                iso = ()
            else:
                raise InconsistentTagging(f"{c} is not the tensor product of {a} and {b}")
            if T.dim != Mc.dim or rank(iso) != Mc.dim:
                raise InconsistentTagging(f"{c} does not match the tensor of {a} and {b}")
            comparison[(b, a)] = iso

    squares: Dict[tuple, EquivariantMorphism] = {}

    def add(dom, cod, vs, vt, phi):
        key = (dom, cod, vs, vt, tuple(phi))
        if key not in squares:
            t = EquivariantMorphism(mod[dom], mod[cod], vm[vs][2], phi, vm[vt][2])
            if not is_equivariant(t):
                raise InconsistentTagging(f"{key} is not equivariant")
            squares[key] = t
            return True
        return False

    for a in hmors:
        add(a, a, "id_" + hmors[a][0], "id_" + hmors[a][1], identity(mod[a].dim))
    for v, (s, t, m) in vm.items():
        add(hid_obj[s], hid_obj[t], v, v, m)
    for g in generators:
        add(*g)

    changed = True
    while changed:
        changed = False
        keys = list(squares)
        for p in keys:
            for q in keys:
                # vertical: p over q
                if q[1] == p[0]:
                    vs, vt = c0_comp[(p[2], q[2])], c0_comp[(p[3], q[3])]
                    changed |= add(q[0], p[1], vs, vt, matmul(p[4], q[4]))
                # horizontal: p to the right of q
                if p[2] == q[3]:
                    dom = hcomp_h[(p[0], q[0])]
                    cod = hcomp_h[(p[1], q[1])]
                    raw = tensor_morphisms(squares[q], squares[p]).phi
                    phi = matmul(comparison[(p[1], q[1])],
                                 matmul(raw, inverse(comparison[(p[0], q[0])], mod[dom].dim)))
                    changed |= add(dom, cod, q[2], p[3], phi)

    tok = {k: _sq_token(*k[:4], k[4]) for k in squares}
    ix = {k: tok[k] for k in squares}
    rev = {(k[0], k[1], k[2], k[3], k[4]): tok[k] for k in squares}
    vcomp, hcomp_sq = {}, {}
    for p in squares:
        for q in squares:
            if q[1] == p[0]:
                vs, vt = c0_comp[(p[2], q[2])], c0_comp[(p[3], q[3])]
                vcomp[(ix[p], ix[q])] = rev[(q[0], p[1], vs, vt, matmul(p[4], q[4]))]
            if p[2] == q[3]:
                dom, cod = hcomp_h[(p[0], q[0])], hcomp_h[(p[1], q[1])]
                raw = tensor_morphisms(squares[q], squares[p]).phi
                phi = matmul(comparison[(p[1], q[1])],
                             matmul(raw, inverse(comparison[(p[0], q[0])], mod[dom].dim)))
                hcomp_sq[(ix[p], ix[q])] = rev[(dom, cod, q[2], p[3], phi)]
    D = FinDoubleCategory(
        c0=c0, hmors=list(hmors), hsrc={a: x[0] for a, x in hmors.items()},
        htgt={a: x[1] for a, x in hmors.items()},
        squares=list(tok.values()),
        dom={tok[k]: k[0] for k in squares}, cod={tok[k]: k[1] for k in squares},
        vsrc={tok[k]: k[2] for k in squares}, vtgt={tok[k]: k[3] for k in squares},
        vid={a: rev[(a, a, "id_" + hmors[a][0], "id_" + hmors[a][1], identity(mod[a].dim))] for a in hmors},
        vcomp=vcomp, hid_obj=dict(hid_obj),
        hid_vmor={v: rev[(hid_obj[s], hid_obj[t], v, v, m)] for v, (s, t, m) in vm.items()},
        hcomp_h=dict(hcomp_h), hcomp_sq=hcomp_sq)
    return Fragment(D, {tok[k]: t for k, t in squares.items()}, dict(algebras), mod)


def fragment_diagonal() -> Fragment:
    """F2 -> F2 x F2 (diagonal) with the regular bimodules and the central
    multiplications of F2 x F2 as globular squares."""
    k, B = field2(), split2()
    I_k, I_B = regular_bimodule(k), regular_bimodule(B)
    hmors = {"Ik": ("k", "k", I_k), "IB": ("B", "B", I_B)}
    # multiplication by e1 and by e2 (commutative, so left = right)
    gens = [("IB", "IB", "id_B", "id_B", (B.times(1 << i, 1), B.times(1 << i, 2))) for i in range(2)]
    gens.append(("Ik", "Ik", "id_k", "id_k", (0,)))
    return build_fragment(
        {"k": k, "B": B}, {"diag": ("k", "B", (3,))}, hmors,
        {"k": "Ik", "B": "IB"},
        {("Ik", "Ik"): "Ik", ("IB", "IB"): "IB"}, gens)


def fragment_corner() -> Fragment:
    """Two copies A, A' of F2 x F2 joined by the identity-matrix isomorphism s,
    with the corner bimodule M = e1 M e2 (dimension 2, M (x) M = 0), its copy M',
    and the zero bimodules Z, Z'.  Squares: all zero maps and the non-2-subcyclic
    isomorphism X = (s, id, s): M -> M' with its inverse."""
    A = split2()
    # left action: e1 acts as identity, e2 as zero; right: e2 identity, e1 zero
    M = F2Bimodule(A, A, 2, ((1, 2), (0, 0)), ((0, 0), (1, 2)))
    I, Z = regular_bimodule(A), zero_bimodule(A, A)
    algebras = {"A": A, "A'": A}
    hmors = {}
    hcomp = {}
    for p in ("", "'"):
        X = "A" + p
        hmors.update({"I" + p: (X, X, I), "M" + p: (X, X, M), "Z" + p: (X, X, Z)})
        for b in ("I", "M", "Z"):
            for a in ("I", "M", "Z"):
                if a == "I":
                    c = b
                elif b == "I":
                    c = a
                else:
                    c = "Z"
                hcomp[(b + p, a + p)] = c + p
    vmors = {"s": ("A", "A'", identity(2)), "s'": ("A'", "A", identity(2))}
    gens = []
    for dom, (x, _, Md) in hmors.items():
        for cod, (y, _, Mc) in hmors.items():
            for v, (s, t, _) in list(vmors.items()) + [("id_A", ("A", "A", None)), ("id_A'", ("A'", "A'", None))]:
                if s == x and t == y:
                    gens.append((dom, cod, v, v, zero(Mc.dim, Md.dim)))
    gens.append(("M", "M'", "s", "s", identity(2)))
    gens.append(("M'", "M", "s'", "s'", identity(2)))
    return build_fragment(algebras, vmors, hmors, {"A": "I", "A'": "I'"}, hcomp, gens)


def check_prop_6_4_forward(fragment: FinDoubleCategory, tag: Dict[Token, EquivariantMorphism]) -> ValidationReport:
    """Every non-globular 2-subcyclic horizontal endomorphism lies in gamma with vertical length 1."""
    from .gg import vertical_filtration

    C = fragment
    if set(tag) != set(C.squares):
        raise InconsistentTagging("tags do not cover the squares")
    for q in C.squares:
        if not is_equivariant(tag[q]):
            raise InconsistentTagging(f"{q} is tagged with a non-equivariant morphism")
    for a in C.hmors:
        if tag[C.vid[a]].phi != identity(tag[C.vid[a]].source.dim):
            raise InconsistentTagging(f"vertical identity of {a} is not tagged by an identity")
    for (p, q), r in C.vcomp.items():
        try:
            ok = vertical_compose(tag[p], tag[q]) == tag[r]
        except DimensionMismatch:
            ok = False
        if not ok:
            raise InconsistentTagging(f"vertical composite of {p} and {q} disagrees with {r}")
    for (p, q), r in C.hcomp_sq.items():
        tt = tensor_morphisms(tag[q], tag[p])
        if (tt.source.dim, tt.target.dim, rank(tt.phi)) != (tag[r].source.dim, tag[r].target.dim, rank(tag[r].phi)):
            raise InconsistentTagging(f"horizontal composite of {p} and {q} disagrees with {r}")
    a = vertical_filtration(C)
    rep = ValidationReport()
    for q in C.squares:
        if C.is_globular(q) or not C.is_horizontal_endomorphism(q):
            continue
        if is_2_subcyclic(tag[q]) and a.vlength.get(q) != 1:
            rep.add("prop-6.4", (q,), "vertical length 1", a.vlength.get(q))
    return rep.sorted()
