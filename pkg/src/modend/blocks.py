"""Block-matrix calculus for skeletal semisimple module categories.

Everything downstream (validators, duality, internal homs, the end engine)
reduces to finite compositions of structure morphisms between direct sums of
simple objects.  This module fixes one concrete additive skeleton and provides
those compositions as exact matrices.

Conventions
-----------
* An :class:`Obj` is an ordered list of summands ``(simple_label, key)``.  The
  keys are structural bookkeeping that make summand positions addressable; two
  objects are interchangeable only if labels and keys agree.
* A :class:`Mor` is a matrix between the summand bases, row index = target
  summand, column index = source summand.  Entries between summands with
  different simple labels must vanish (Schur).
* Decomposition maps of ``X acted on N`` etc. are the canonical inclusions and
  projections of the flat sum; all nontrivial coherence data lives in the
  associator blocks (F-symbols of the base, L-symbols of a module) and in the
  duality scalars.
* ``assoc(A, B, N)`` realizes ``(A x B) act N -> A act (B act N)``; its block
  at simple slots ``(a, b, p)`` with target ``t`` is the L-matrix
  ``rows j in b act p, cols z in a x b``.
* The unit constraints of the base are the canonical projections (scalar 1);
  module unit maps carry the module's unit scalars.
* Right duals pair as ``ev(a): a* x a -> 1`` with scalar ``ev[a]``, right
  coevaluation ``coev(a): 1 -> a x a*``; left duals pair as
  ``lev(a): a x *a -> 1`` and ``lcoev(a): 1 -> *a x a``.  Flat duals of sums
  dualize labels summand-wise and pair diagonally.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .scalarfield import DimensionMismatch, FieldSpec, Matrix


class Obj:
    """Formal direct sum of simples with positionally addressable summands."""

    __slots__ = ("labels", "keys", "index", "_hash")

    def __init__(self, labels: tuple, keys: tuple):
        self.labels = labels
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        if len(self.index) != len(keys):
            raise ValueError("summand keys must be unique")
        self._hash = None

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (isinstance(other, Obj) and self.labels == other.labels
                and self.keys == other.keys)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, self.keys))
        return self._hash

    def __repr__(self):
        return f"Obj[{', '.join(self.labels)}]"

    def positions(self, label: str) -> list:
        return [i for i, lab in enumerate(self.labels) if lab == label]


def simple_obj(label: str) -> Obj:
    return Obj((label,), ((),))


class Mor:
    """Morphism between two :class:`Obj` as an exact matrix."""

    __slots__ = ("src", "dst", "mat")

    def __init__(self, src: Obj, dst: Obj, mat: Matrix):
        if mat.rows != len(dst) or mat.cols != len(src):
            raise DimensionMismatch("matrix shape does not match objects")
        self.src = src
        self.dst = dst
        self.mat = mat

    @classmethod
    def zero(cls, field: FieldSpec, src: Obj, dst: Obj) -> "Mor":
        return cls(src, dst, Matrix.zeros(field, len(dst), len(src)))

    @classmethod
    def identity(cls, field: FieldSpec, obj: Obj) -> "Mor":
        return cls(obj, obj, Matrix.identity(field, len(obj)))

    def __mul__(self, other: "Mor") -> "Mor":
        """Composition ``self after other``."""
        if other.dst != self.src:
            raise DimensionMismatch("composition mismatch")
        return Mor(other.src, self.dst, self.mat * other.mat)

    def __add__(self, other: "Mor") -> "Mor":
        if self.src != other.src or self.dst != other.dst:
            raise DimensionMismatch("sum of morphisms with different ends")
        return Mor(self.src, self.dst, self.mat + other.mat)

    def __sub__(self, other: "Mor") -> "Mor":
        if self.src != other.src or self.dst != other.dst:
            raise DimensionMismatch("difference of morphisms with different ends")
        return Mor(self.src, self.dst, self.mat - other.mat)

    def scale(self, scalar) -> "Mor":
        return Mor(self.src, self.dst, self.mat.scale(scalar))

    def inverse(self) -> "Mor":
        return Mor(self.dst, self.src, self.mat.inverse())

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def __eq__(self, other):
        return (isinstance(other, Mor) and self.src == other.src
                and self.dst == other.dst and self.mat == other.mat)

    def __repr__(self):
        return f"Mor({self.src!r} -> {self.dst!r})"


class BaseTables:
    """Fusion data of the base category together with duality scalars."""

    def __init__(self, field: FieldSpec, simples: Sequence[str], unit: str,
                 dual: dict, fuse_map: dict, f_entry: Callable):
        self.field = field
        self.simples = tuple(simples)
        self.unit = unit
        self.dual = dict(dual)
        self._fuse = fuse_map
        self._f_entry = f_entry
        self.ev = {}
        self.coev = {}
        self.lev = {}
        self.lcoev = {}
        self._fblock_cache = {}
        self._reg = None

    def fuse(self, a: str, b: str) -> tuple:
        return self._fuse.get((a, b), ())

    def n(self, a: str, b: str, c: str) -> bool:
        return c in self._fuse.get((a, b), ())

    def f_block(self, a: str, b: str, c: str, t: str):
        """F-matrix of ``a,b,c`` at total ``t``: rows over f, cols over e."""
        key = (a, b, c, t)
        blk = self._fblock_cache.get(key)
        if blk is None:
            f_list = [f for f in self.fuse(b, c) if self.n(a, f, t)]
            e_list = [e for e in self.fuse(a, b) if self.n(e, c, t)]
            mat = Matrix.zeros(self.field, len(f_list), len(e_list))
            for i, f in enumerate(f_list):
                for j, e in enumerate(e_list):
                    mat[i, j] = self._f_entry(a, b, c, t, e, f)
            blk = (f_list, e_list, mat)
            self._fblock_cache[key] = blk
        return blk

    def regular(self) -> "ModuleTables":
        if self._reg is None:
            self._reg = ModuleTables(
                base=self,
                simples=self.simples,
                act_map={(a, b): self.fuse(a, b) for a in self.simples for b in self.simples},
                l_entry=lambda X, Y, i, j, Z, t: self._f_entry(X, Y, i, t, Z, j),
                unit_scalars={a: self.field.one for a in self.simples},
            )
        return self._reg


class ModuleTables:
    """Skeletal data of a left module category over a :class:`BaseTables`."""

    def __init__(self, base: BaseTables, simples: Sequence[str], act_map: dict,
                 l_entry: Callable, unit_scalars: dict):
        self.base = base
        self.field = base.field
        self.simples = tuple(simples)
        self._act = act_map
        self._l_entry = l_entry
        self._units = unit_scalars
        self._lblock_cache = {}
        self._cache = {}

    def act_set(self, X: str, i: str) -> tuple:
        return self._act.get((X, i), ())

    def n(self, X: str, i: str, j: str) -> bool:
        return j in self._act.get((X, i), ())

    def unit_scalar(self, i: str):
        return self._units[i]

    def l_block(self, X: str, Y: str, i: str, t: str):
        """Associator block of ``(X x Y) act m_i`` at target ``t``.

        Rows run over ``j in Y act m_i`` with ``t in X act m_j``, columns over
        ``z in X x Y`` with ``t in z act m_i``.
        """
        key = (X, Y, i, t)
        blk = self._lblock_cache.get(key)
        if blk is None:
            j_list = [j for j in self.act_set(Y, i) if self.n(X, j, t)]
            z_list = [z for z in self.base.fuse(X, Y) if self.n(z, i, t)]
            mat = Matrix.zeros(self.field, len(j_list), len(z_list))
            for r, j in enumerate(j_list):
                for c, z in enumerate(z_list):
                    mat[r, c] = self._l_entry(X, Y, i, j, z, t)
            blk = (j_list, z_list, mat)
            self._lblock_cache[key] = blk
        return blk


class RightTables:
    """Skeletal data of a right module category."""

    def __init__(self, base: BaseTables, simples: Sequence[str], ract_map: dict,
                 rl_entry: Callable, runit_scalars: dict):
        self.base = base
        self.field = base.field
        self.simples = tuple(simples)
        self._ract = ract_map
        self._rl_entry = rl_entry
        self._units = runit_scalars
        self._block_cache = {}

    def ract_set(self, i: str, X: str) -> tuple:
        return self._ract.get((i, X), ())

    def n(self, i: str, X: str, j: str) -> bool:
        return j in self._ract.get((i, X), ())

    def runit_scalar(self, i: str):
        return self._units[i]

    def rl_block(self, i: str, X: str, Y: str, t: str):
        """Block of ``m_i ract (X x Y) -> (m_i ract X) ract Y`` at target ``t``.

        Rows over ``j in m_i ract X`` with ``t in m_j ract Y``, columns over
        ``z in X x Y`` with ``t in m_i ract z``.
        """
        key = (i, X, Y, t)
        blk = self._block_cache.get(key)
        if blk is None:
            j_list = [j for j in self.ract_set(i, X) if self.n(j, Y, t)]
            z_list = [z for z in self.base.fuse(X, Y) if self.n(i, z, t)]
            mat = Matrix.zeros(self.field, len(j_list), len(z_list))
            for r, j in enumerate(j_list):
                for c, z in enumerate(z_list):
                    mat[r, c] = self._rl_entry(i, X, Y, j, z, t)
            blk = (j_list, z_list, mat)
            self._block_cache[key] = blk
        return blk


# ---------------------------------------------------------------------------
# object constructors


def cunit(base: BaseTables) -> Obj:
    return simple_obj(base.unit)


def ctensor(base: BaseTables, A: Obj, B: Obj) -> Obj:
    labels, keys = [], []
    for ia, a in enumerate(A.labels):
        for ib, b in enumerate(B.labels):
            for z in base.fuse(a, b):
                labels.append(z)
                keys.append((ia, ib, z))
    return Obj(tuple(labels), tuple(keys))


def act_c(tables: ModuleTables, A: Obj, N: Obj) -> Obj:
    labels, keys = [], []
    for ia, a in enumerate(A.labels):
        for ip, p in enumerate(N.labels):
            for t in tables.act_set(a, p):
                labels.append(t)
                keys.append((ia, ip, t))
    return Obj(tuple(labels), tuple(keys))


def act1(tables: ModuleTables, X: str, N: Obj) -> Obj:
    return act_c(tables, simple_obj(X), N)


def ract_c(tables: RightTables, N: Obj, A: Obj) -> Obj:
    labels, keys = [], []
    for ip, p in enumerate(N.labels):
        for ia, a in enumerate(A.labels):
            for t in tables.ract_set(p, a):
                labels.append(t)
                keys.append((ip, ia, t))
    return Obj(tuple(labels), tuple(keys))


def rdual_flat(base: BaseTables, A: Obj) -> Obj:
    return Obj(tuple(base.dual[a] for a in A.labels), A.keys)


ldual_flat = rdual_flat  # one involution serves both duals at label level


# ---------------------------------------------------------------------------
# structural morphisms of a left module


def whisker_c(tables: ModuleTables, A: Obj, f: Mor) -> Mor:
    """``id_A  act  f``."""
    src = act_c(tables, A, f.src)
    dst = act_c(tables, A, f.dst)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for iq in range(len(f.dst)):
        for ip in range(len(f.src)):
            val = f.mat[iq, ip]
            if not val:
                continue
            s = f.src.labels[ip]
            for ia, a in enumerate(A.labels):
                for t in tables.act_set(a, s):
                    mat[dst.index[(ia, iq, t)], src.index[(ia, ip, t)]] = val
    return Mor(src, dst, mat)


def act_mor(tables: ModuleTables, g: Mor, N: Obj) -> Mor:
    """``g act id_N`` for a base-category morphism ``g``."""
    src = act_c(tables, g.src, N)
    dst = act_c(tables, g.dst, N)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for ib in range(len(g.dst)):
        for ia in range(len(g.src)):
            val = g.mat[ib, ia]
            if not val:
                continue
            a = g.src.labels[ia]
            for ip, p in enumerate(N.labels):
                for t in tables.act_set(a, p):
                    mat[dst.index[(ib, ip, t)], src.index[(ia, ip, t)]] = val
    return Mor(src, dst, mat)


def assoc(tables: ModuleTables, A: Obj, B: Obj, N: Obj) -> Mor:
    """``(A x B) act N -> A act (B act N)`` assembled from L-blocks."""
    key = ("assoc", A, B, N)
    cached = tables._cache.get(key)
    if cached is not None:
        return cached
    ab = ctensor(tables.base, A, B)
    src = act_c(tables, ab, N)
    inner = act_c(tables, B, N)
    dst = act_c(tables, A, inner)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for ia, a in enumerate(A.labels):
        for ib, b in enumerate(B.labels):
            for ip, p in enumerate(N.labels):
                targets = set()
                for z in tables.base.fuse(a, b):
                    targets.update(tables.act_set(z, p))
                for t in targets:
                    j_list, z_list, blk = tables.l_block(a, b, p, t)
                    for r, j in enumerate(j_list):
                        for c, z in enumerate(z_list):
                            val = blk[r, c]
                            if not val:
                                continue
                            sp = src.index[(ab.index[(ia, ib, z)], ip, t)]
                            dp = dst.index[(ia, inner.index[(ib, ip, j)], t)]
                            mat[dp, sp] = val
    out = Mor(src, dst, mat)
    tables._cache[key] = out
    return out


def assoc_inv(tables: ModuleTables, A: Obj, B: Obj, N: Obj) -> Mor:
    key = ("assoc_inv", A, B, N)
    cached = tables._cache.get(key)
    if cached is None:
        cached = assoc(tables, A, B, N).inverse()
        tables._cache[key] = cached
    return cached


def unit_l(tables: ModuleTables, N: Obj) -> Mor:
    """``1 act N -> N`` carrying the module's unit scalars."""
    src = act_c(tables, simple_obj(tables.base.unit), N)
    mat = Matrix.zeros(tables.field, len(N), len(src))
    for ip, p in enumerate(N.labels):
        mat[ip, src.index[(0, ip, p)]] = tables.unit_scalar(p)
    return Mor(src, N, mat)


def unit_l_inv(tables: ModuleTables, N: Obj) -> Mor:
    src = act_c(tables, simple_obj(tables.base.unit), N)
    mat = Matrix.zeros(tables.field, len(src), len(N))
    for ip, p in enumerate(N.labels):
        mat[src.index[(0, ip, p)], ip] = tables.unit_scalar(p).inverse()
    return Mor(N, src, mat)


def runit_reg(base: BaseTables, A: Obj) -> Mor:
    """``A x 1 -> A`` in the regular module (canonical projections)."""
    reg = base.regular()
    src = act_c(reg, A, simple_obj(base.unit))
    mat = Matrix.zeros(base.field, len(A), len(src))
    for ia, a in enumerate(A.labels):
        mat[ia, src.index[(ia, 0, a)]] = base.field.one
    return Mor(src, A, mat)


def runit_reg_inv(base: BaseTables, A: Obj) -> Mor:
    reg = base.regular()
    src = act_c(reg, A, simple_obj(base.unit))
    mat = Matrix.zeros(base.field, len(src), len(A))
    for ia, a in enumerate(A.labels):
        mat[src.index[(ia, 0, a)], ia] = base.field.one
    return Mor(A, src, mat)


# ---------------------------------------------------------------------------
# structural morphisms of a right module


def rwhisker(tables: RightTables, f: Mor, A: Obj) -> Mor:
    """``f ract id_A``."""
    src = ract_c(tables, f.src, A)
    dst = ract_c(tables, f.dst, A)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for iq in range(len(f.dst)):
        for ip in range(len(f.src)):
            val = f.mat[iq, ip]
            if not val:
                continue
            s = f.src.labels[ip]
            for ia, a in enumerate(A.labels):
                for t in tables.ract_set(s, a):
                    mat[dst.index[(iq, ia, t)], src.index[(ip, ia, t)]] = val
    return Mor(src, dst, mat)


def ract_mor(tables: RightTables, N: Obj, g: Mor) -> Mor:
    """``id_N ract g``."""
    src = ract_c(tables, N, g.src)
    dst = ract_c(tables, N, g.dst)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for ib in range(len(g.dst)):
        for ia in range(len(g.src)):
            val = g.mat[ib, ia]
            if not val:
                continue
            a = g.src.labels[ia]
            for ip, p in enumerate(N.labels):
                for t in tables.ract_set(p, a):
                    mat[dst.index[(ip, ib, t)], src.index[(ip, ia, t)]] = val
    return Mor(src, dst, mat)


def rassoc(tables: RightTables, N: Obj, A: Obj, B: Obj) -> Mor:
    """``N ract (A x B) -> (N ract A) ract B``."""
    ab = ctensor(tables.base, A, B)
    src = ract_c(tables, N, ab)
    inner = ract_c(tables, N, A)
    dst = ract_c(tables, inner, B)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for ip, p in enumerate(N.labels):
        for ia, a in enumerate(A.labels):
            for ib, b in enumerate(B.labels):
                targets = set()
                for z in tables.base.fuse(a, b):
                    targets.update(tables.ract_set(p, z))
                for t in targets:
                    j_list, z_list, blk = tables.rl_block(p, a, b, t)
                    for r, j in enumerate(j_list):
                        for c, z in enumerate(z_list):
                            val = blk[r, c]
                            if not val:
                                continue
                            sp = src.index[(ip, ab.index[(ia, ib, z)], t)]
                            dp = dst.index[(inner.index[(ip, ia, j)], ib, t)]
                            mat[dp, sp] = val
    return Mor(src, dst, mat)


def runit_r(tables: RightTables, N: Obj) -> Mor:
    """``N ract 1 -> N``."""
    src = ract_c(tables, N, simple_obj(tables.base.unit))
    mat = Matrix.zeros(tables.field, len(N), len(src))
    for ip, p in enumerate(N.labels):
        mat[ip, src.index[(ip, 0, p)]] = tables.runit_scalar(p)
    return Mor(src, N, mat)


# ---------------------------------------------------------------------------
# duality on the base category


def ev_flat(base: BaseTables, A: Obj) -> Mor:
    """``A* x A -> 1`` pairing matching summands with the right-dual scalars."""
    src = ctensor(base, rdual_flat(base, A), A)
    dst = cunit(base)
    mat = Matrix.zeros(base.field, 1, len(src))
    for ia, a in enumerate(A.labels):
        mat[0, src.index[(ia, ia, base.unit)]] = base.ev[a]
    return Mor(src, dst, mat)


def coev_flat(base: BaseTables, A: Obj) -> Mor:
    """``1 -> A x A*``."""
    dst = ctensor(base, A, rdual_flat(base, A))
    mat = Matrix.zeros(base.field, len(dst), 1)
    for ia, a in enumerate(A.labels):
        mat[dst.index[(ia, ia, base.unit)], 0] = base.coev[a]
    return Mor(cunit(base), dst, mat)


def lev_flat(base: BaseTables, A: Obj) -> Mor:
    """``A x *A -> 1``."""
    src = ctensor(base, A, ldual_flat(base, A))
    mat = Matrix.zeros(base.field, 1, len(src))
    for ia, a in enumerate(A.labels):
        mat[0, src.index[(ia, ia, base.unit)]] = base.lev[a]
    return Mor(src, cunit(base), mat)


def lcoev_flat(base: BaseTables, A: Obj) -> Mor:
    """``1 -> *A x A``."""
    dst = ctensor(base, ldual_flat(base, A), A)
    mat = Matrix.zeros(base.field, len(dst), 1)
    for ia, a in enumerate(A.labels):
        mat[dst.index[(ia, ia, base.unit)], 0] = base.lcoev[a]
    return Mor(cunit(base), dst, mat)


def eps_flat(tables: ModuleTables, A: Obj, N: Obj) -> Mor:
    """``A* act (A act N) -> N``: right-dual evaluation acting on a module."""
    da = rdual_flat(tables.base, A)
    inner = act_c(tables, A, N)
    step1 = assoc_inv(tables, da, A, N)        # A* act (A act N) -> (A* x A) act N
    step2 = act_mor(tables, ev_flat(tables.base, A), N)
    step3 = unit_l(tables, N)
    return step3 * step2 * step1


def zeta_flat(tables: ModuleTables, A: Obj, N: Obj) -> Mor:
    """``A act (*A act N) -> N``: left-dual evaluation acting on a module."""
    da = ldual_flat(tables.base, A)
    step1 = assoc_inv(tables, A, da, N)
    step2 = act_mor(tables, lev_flat(tables.base, A), N)
    step3 = unit_l(tables, N)
    return step3 * step2 * step1


def coev_insert(tables: ModuleTables, A: Obj, N: Obj) -> Mor:
    """``N -> A act (A* act N)`` via the right coevaluation."""
    da = rdual_flat(tables.base, A)
    step1 = unit_l_inv(tables, N)
    step2 = act_mor(tables, coev_flat(tables.base, A), N)
    step3 = assoc(tables, A, da, N)
    return step3 * step2 * step1


def lcoev_insert(tables: ModuleTables, A: Obj, N: Obj) -> Mor:
    """``N -> *A act (A act N)`` via the left coevaluation."""
    da = ldual_flat(tables.base, A)
    step1 = unit_l_inv(tables, N)
    step2 = act_mor(tables, lcoev_flat(tables.base, A), N)
    step3 = assoc(tables, da, A, N)
    return step3 * step2 * step1


def rdual_mor(base: BaseTables, g: Mor) -> Mor:
    """Right-dual transpose ``g*: B* -> A*`` of ``g: A -> B``."""
    reg = base.regular()
    A, B = g.src, g.dst
    da, db = rdual_flat(base, A), rdual_flat(base, B)
    n0 = act_c(reg, da, simple_obj(base.unit))
    chain = runit_reg_inv(base, db)                           # B* -> B* act 1
    chain = whisker_c(reg, db, coev_insert(reg, A, simple_obj(base.unit))) * chain
    chain = whisker_c(reg, db, act_mor(reg, g, n0)) * chain   # -> B* act (B act (A* act 1))
    chain = eps_flat(reg, B, n0) * chain                      # -> A* act 1
    return runit_reg(base, da) * chain


def ldual_mor(base: BaseTables, g: Mor) -> Mor:
    """Left-dual transpose ``*g: *B -> *A`` of ``g: A -> B``."""
    reg = base.regular()
    A, B = g.src, g.dst
    da, db = ldual_flat(base, A), ldual_flat(base, B)
    db_obj = db
    chain = lcoev_insert(reg, A, db_obj)                      # *B -> *A act (A act *B)
    chain = whisker_c(reg, da, act_mor(reg, g, db_obj)) * chain
    inner = whisker_c(reg, B, runit_reg_inv(base, db))        # B act *B -> B act (*B act 1)
    inner = zeta_flat(reg, B, simple_obj(base.unit)) * inner  # -> 1
    chain = whisker_c(reg, da, inner) * chain                 # -> *A act 1
    return runit_reg(base, da) * chain


def phi_r(base: BaseTables, A1: Obj, A2: Obj) -> Mor:
    """Canonical iso ``(A1 x A2)* -> A2* x A1*`` between two right duals."""
    reg = base.regular()
    V = ctensor(base, A1, A2)
    d1, d2 = rdual_flat(base, A1), rdual_flat(base, A2)
    Da = rdual_flat(base, V)
    Db = ctensor(base, d2, d1)
    one = simple_obj(base.unit)
    # nested coevaluation of (Db, V): 1 -> A1 act (A2 act (A2* act (A1* act 1)))
    co = coev_insert(reg, A1, one)
    co = whisker_c(reg, A1, coev_insert(reg, A2, act_c(reg, d1, one))) * co
    chain = runit_reg_inv(base, Da)
    chain = whisker_c(reg, Da, co) * chain
    # evaluate Da against A1 x A2 after reassociating the bracketing
    n_tail = act_c(reg, d2, act_c(reg, d1, one))
    refuse = whisker_c(reg, Da, assoc_inv(reg, A1, A2, n_tail))
    chain = eps_flat(reg, V, n_tail) * (refuse * chain)
    chain = assoc_inv(reg, d2, d1, one) * chain
    return runit_reg(base, Db) * chain


def nu_left(base: BaseTables, X: str) -> Mor:
    """Canonical scalar iso from ``X`` (paired with X* by ev/coev) to ``*(X*)``."""
    reg = base.regular()
    sx = simple_obj(X)
    sxd = simple_obj(base.dual[X])
    one = simple_obj(base.unit)
    pair1 = eps_flat(reg, sx, one) * whisker_c(reg, sxd, runit_reg_inv(base, sx))
    return runit_reg(base, sx) * whisker_c(reg, sx, pair1) * lcoev_insert(reg, sxd, sx)


def phi_l(base: BaseTables, A1: Obj, A2: Obj) -> Mor:
    """Canonical iso ``*(A1 x A2) -> *A2 x *A1`` between two left duals."""
    reg = base.regular()
    V = ctensor(base, A1, A2)
    d1, d2 = ldual_flat(base, A1), ldual_flat(base, A2)
    La = ldual_flat(base, V)
    Lb = ctensor(base, d2, d1)
    one = simple_obj(base.unit)
    # insert the nested left coevaluations of (Lb, V) around La:
    # La -> *A2 act (A2 act La) -> *A2 act (*A1 act (A1 act (A2 act La)))
    chain = lcoev_insert(reg, A2, La)
    chain = whisker_c(reg, d2, lcoev_insert(reg, A1, act_c(reg, A2, La))) * chain
    # pair V off against La with the flat left evaluation
    f3 = zeta_flat(reg, V, one) * whisker_c(reg, V, runit_reg_inv(base, La)) \
        * assoc_inv(reg, A1, A2, La)
    chain = whisker_c(reg, d2, whisker_c(reg, d1, f3)) * chain
    chain = assoc_inv(reg, d2, d1, one) * chain
    return runit_reg(base, Lb) * chain


# ---------------------------------------------------------------------------
# module functors


class FunctorTables:
    """On-simples multiplicities and coherence blocks of a module functor."""

    def __init__(self, src: ModuleTables, dst: ModuleTables, mult: dict,
                 c_block_fn: Callable):
        self.src = src
        self.dst = dst
        self.field = src.field
        self._mult = mult
        self._c_block_fn = c_block_fn
        self._cache = {}

    def mult(self, i: str, k: str) -> int:
        return self._mult.get((i, k), 0)

    def c_block(self, X: str, i: str) -> Matrix:
        """Matrix of ``c_{X, m_i}`` in the canonical row/column orders."""
        key = (X, i)
        blk = self._cache.get(key)
        if blk is None:
            blk = self._c_block_fn(X, i)
            self._cache[key] = blk
        return blk


def c_rows(ft: FunctorTables, X: str, i: str) -> list:
    """Summand order of ``X act F(m_i)``: triples ``(k, copy, t)``."""
    rows = []
    for k in ft.dst.simples:
        for cnt in range(ft.mult(i, k)):
            for t in ft.dst.act_set(X, k):
                rows.append((k, cnt, t))
    return rows


def c_cols(ft: FunctorTables, X: str, i: str) -> list:
    """Summand order of ``F(X act m_i)``: triples ``(t_src, k, copy)``."""
    cols = []
    for t in ft.src.act_set(X, i):
        for k in ft.dst.simples:
            for cnt in range(ft.mult(t, k)):
                cols.append((t, k, cnt))
    return cols


def f_obj(ft: FunctorTables, N: Obj) -> Obj:
    labels, keys = [], []
    for ip, p in enumerate(N.labels):
        for k in ft.dst.simples:
            for cnt in range(ft.mult(p, k)):
                labels.append(k)
                keys.append((ip, k, cnt))
    return Obj(tuple(labels), tuple(keys))


def f_mor(ft: FunctorTables, f: Mor) -> Mor:
    """Multiplicity inflation of a module morphism under the functor."""
    src = f_obj(ft, f.src)
    dst = f_obj(ft, f.dst)
    mat = Matrix.zeros(ft.field, len(dst), len(src))
    for iq in range(len(f.dst)):
        for ip in range(len(f.src)):
            val = f.mat[iq, ip]
            if not val:
                continue
            p = f.src.labels[ip]
            for k in ft.dst.simples:
                for cnt in range(ft.mult(p, k)):
                    mat[dst.index[(iq, k, cnt)], src.index[(ip, k, cnt)]] = val
    return Mor(src, dst, mat)


def c_mor(ft: FunctorTables, A: Obj, N: Obj) -> Mor:
    """Coherence ``F(A act N) -> A act F(N)`` assembled from simple blocks."""
    key = ("c_mor", A, N)
    cached = ft._cache.get(key)
    if cached is not None:
        return cached
    src_inner = act_c(ft.src, A, N)
    src = f_obj(ft, src_inner)
    fn = f_obj(ft, N)
    dst = act_c(ft.dst, A, fn)
    mat = Matrix.zeros(ft.field, len(dst), len(src))
    for ia, a in enumerate(A.labels):
        for ip, p in enumerate(N.labels):
            blk = ft.c_block(a, p)
            rows = c_rows(ft, a, p)
            cols = c_cols(ft, a, p)
            for r, (k, cnt, t) in enumerate(rows):
                dpos = dst.index[(ia, fn.index[(ip, k, cnt)], t)]
                for c, (t_src, k2, cnt2) in enumerate(cols):
                    val = blk[r, c]
                    if not val:
                        continue
                    spos = src.index[(src_inner.index[(ia, ip, t_src)], k2, cnt2)]
                    mat[dpos, spos] = val
    out = Mor(src, dst, mat)
    ft._cache[key] = out
    return out


def c_mor_inv(ft: FunctorTables, A: Obj, N: Obj) -> Mor:
    key = ("c_mor_inv", A, N)
    cached = ft._cache.get(key)
    if cached is None:
        cached = c_mor(ft, A, N).inverse()
        ft._cache[key] = cached
    return cached


# ---------------------------------------------------------------------------
# internal hom of a left module


def uhom_set(tables: ModuleTables, i: str, j: str) -> tuple:
    return tuple(X for X in tables.base.simples if tables.n(X, i, j))


def uhom_obj(tables: ModuleTables, A: Obj, B: Obj) -> Obj:
    """Representing object of ``Hom(- act A, B)`` for sums of simples."""
    labels, keys = [], []
    for ipa, p in enumerate(A.labels):
        for iq, q in enumerate(B.labels):
            for X in uhom_set(tables, p, q):
                labels.append(X)
                keys.append((ipa, iq, X))
    return Obj(tuple(labels), tuple(keys))


def uhom_mor_first(tables: ModuleTables, f: Mor, B: Obj) -> Mor:
    """``uhom(f, id_B)``, contravariant inflation in the first slot."""
    src = uhom_obj(tables, f.dst, B)
    dst = uhom_obj(tables, f.src, B)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for iq2 in range(len(f.dst)):
        for ip in range(len(f.src)):
            val = f.mat[iq2, ip]
            if not val:
                continue
            for ib, q in enumerate(B.labels):
                for X in uhom_set(tables, f.src.labels[ip], q):
                    mat[dst.index[(ip, ib, X)], src.index[(iq2, ib, X)]] = val
    return Mor(src, dst, mat)


def uhom_mor_second(tables: ModuleTables, A: Obj, g: Mor) -> Mor:
    """``uhom(id_A, g)``, covariant inflation in the second slot."""
    src = uhom_obj(tables, A, g.src)
    dst = uhom_obj(tables, A, g.dst)
    mat = Matrix.zeros(tables.field, len(dst), len(src))
    for iq2 in range(len(g.dst)):
        for iq in range(len(g.src)):
            val = g.mat[iq2, iq]
            if not val:
                continue
            for ipa, p in enumerate(A.labels):
                for X in uhom_set(tables, p, g.src.labels[iq]):
                    mat[dst.index[(ipa, iq2, X)], src.index[(ipa, iq, X)]] = val
    return Mor(src, dst, mat)


def evh_mor(tables: ModuleTables, A: Obj, B: Obj) -> Mor:
    """Counit ``uhom(A, B) act A -> B`` on the chosen bases."""
    uh = uhom_obj(tables, A, B)
    src = act_c(tables, uh, A)
    mat = Matrix.zeros(tables.field, len(B), len(src))
    for ih, (ipa, iq, X) in enumerate(uh.keys):
        t = B.labels[iq]
        pos = src.index.get((ih, ipa, t))
        if pos is not None:
            mat[iq, pos] = tables.field.one
    return Mor(src, B, mat)


def psi_reshuffle(tables: ModuleTables, W: Obj, A: Obj, B: Obj, h: Mor) -> Mor:
    """Adjunction mate ``W -> uhom(A, B)`` of ``h: W act A -> B``."""
    wa = act_c(tables, W, A)
    if h.src != wa or h.dst != B:
        raise DimensionMismatch("mate of a morphism with unexpected ends")
    uh = uhom_obj(tables, A, B)
    mat = Matrix.zeros(tables.field, len(uh), len(W))
    for dpos, (ipa, iq, X) in enumerate(uh.keys):
        t = B.labels[iq]
        for iw in W.positions(X):
            spos = wa.index.get((iw, ipa, t))
            if spos is not None:
                mat[dpos, iw] = h.mat[iq, spos]
    return Mor(W, uh, mat)


def uhom_left_tensor_iso(tables: ModuleTables, X: str, A: Obj, B: Obj) -> Mor:
    """Action iso ``X x uhom(A, B) -> uhom(A, X act B)`` on chosen bases."""
    uh = uhom_obj(tables, A, B)
    W = ctensor(tables.base, simple_obj(X), uh)
    xb = act_c(tables, simple_obj(X), B)
    h = whisker_c(tables, simple_obj(X), evh_mor(tables, A, B)) \
        * assoc(tables, simple_obj(X), uh, A)
    return psi_reshuffle(tables, W, A, xb, h)


def mor_from_blocks(field: FieldSpec, src: Obj, dst: Obj, entries: dict) -> Mor:
    mat = Matrix.zeros(field, len(dst), len(src))
    for (kd, ks), val in entries.items():
        mat[dst.index[kd], src.index[ks]] = val
    return Mor(src, dst, mat)


# ---------------------------------------------------------------------------
# base-category structure morphisms


def ctensor_mor(base: BaseTables, g: Mor, h: Mor) -> Mor:
    """``g x h`` on the canonical decompositions (diagonal in the fusion slot)."""
    src = ctensor(base, g.src, h.src)
    dst = ctensor(base, g.dst, h.dst)
    mat = Matrix.zeros(base.field, len(dst), len(src))
    for ia2 in range(len(g.dst)):
        for ia in range(len(g.src)):
            gv = g.mat[ia2, ia]
            if not gv:
                continue
            a = g.src.labels[ia]
            for ib2 in range(len(h.dst)):
                for ib in range(len(h.src)):
                    hv = h.mat[ib2, ib]
                    if not hv:
                        continue
                    b = h.src.labels[ib]
                    for z in base.fuse(a, b):
                        mat[dst.index[(ia2, ib2, z)], src.index[(ia, ib, z)]] = gv * hv
    return Mor(src, dst, mat)


def c_assoc(base: BaseTables, A: Obj, B: Obj, C: Obj) -> Mor:
    """``(A x B) x C -> A x (B x C)`` from F-blocks."""
    ab = ctensor(base, A, B)
    bc = ctensor(base, B, C)
    src = ctensor(base, ab, C)
    dst = ctensor(base, A, bc)
    mat = Matrix.zeros(base.field, len(dst), len(src))
    for ia, a in enumerate(A.labels):
        for ib, b in enumerate(B.labels):
            for ic, c in enumerate(C.labels):
                totals = set()
                for e in base.fuse(a, b):
                    totals.update(base.fuse(e, c))
                for t in totals:
                    f_list, e_list, blk = base.f_block(a, b, c, t)
                    for r, f in enumerate(f_list):
                        for s, e in enumerate(e_list):
                            val = blk[r, s]
                            if not val:
                                continue
                            spos = src.index[(ab.index[(ia, ib, e)], ic, t)]
                            dpos = dst.index[(ia, bc.index[(ib, ic, f)], t)]
                            mat[dpos, spos] = val
    return Mor(src, dst, mat)


def c_lunit(base: BaseTables, A: Obj) -> Mor:
    """``1 x A -> A`` (scalar 1, skeleton convention)."""
    src = ctensor(base, simple_obj(base.unit), A)
    mat = Matrix.zeros(base.field, len(A), len(src))
    for ia, a in enumerate(A.labels):
        mat[ia, src.index[(0, ia, a)]] = base.field.one
    return Mor(src, A, mat)


def c_runit(base: BaseTables, A: Obj) -> Mor:
    """``A x 1 -> A`` (scalar 1, skeleton convention)."""
    src = ctensor(base, A, simple_obj(base.unit))
    mat = Matrix.zeros(base.field, len(A), len(src))
    for ia, a in enumerate(A.labels):
        mat[ia, src.index[(ia, 0, a)]] = base.field.one
    return Mor(src, A, mat)


# ---------------------------------------------------------------------------
# coherence-axiom checkers (used by the validators)


def left_pentagon_defect(tables: ModuleTables, X: str, Y: str, Z: str, i: str) -> Mor:
    """Difference of the two sides of the mixed pentagon at ``(X, Y, Z, m_i)``."""
    sx, sy, sz = simple_obj(X), simple_obj(Y), simple_obj(Z)
    M = simple_obj(i)
    lhs = assoc(tables, sx, sy, act_c(tables, sz, M)) \
        * assoc(tables, ctensor(tables.base, sx, sy), sz, M)
    rhs = whisker_c(tables, sx, assoc(tables, sy, sz, M)) \
        * assoc(tables, sx, ctensor(tables.base, sy, sz), M) \
        * act_mor(tables, c_assoc(tables.base, sx, sy, sz), M)
    return lhs - rhs


def left_unit_defect(tables: ModuleTables, X: str, i: str) -> Mor:
    """Difference of the two sides of the unit coherence at ``(X, m_i)``."""
    sx = simple_obj(X)
    M = simple_obj(i)
    lhs = whisker_c(tables, sx, unit_l(tables, M)) \
        * assoc(tables, sx, simple_obj(tables.base.unit), M)
    rhs = act_mor(tables, c_runit(tables.base, sx), M)
    return lhs - rhs


def right_pentagon_defect(tables: RightTables, i: str, X: str, Y: str, Z: str) -> Mor:
    sx, sy, sz = simple_obj(X), simple_obj(Y), simple_obj(Z)
    M = simple_obj(i)
    lhs = rassoc(tables, ract_c(tables, M, sx), sy, sz) \
        * rassoc(tables, M, sx, ctensor(tables.base, sy, sz)) \
        * ract_mor(tables, M, c_assoc(tables.base, sx, sy, sz))
    rhs = rwhisker(tables, rassoc(tables, M, sx, sy), sz) \
        * rassoc(tables, M, ctensor(tables.base, sx, sy), sz)
    return lhs - rhs


def right_unit_defect(tables: RightTables, i: str, X: str) -> Mor:
    sx = simple_obj(X)
    M = simple_obj(i)
    lhs = rwhisker(tables, runit_r(tables, M), sx) \
        * rassoc(tables, M, simple_obj(tables.base.unit), sx)
    rhs = ract_mor(tables, M, c_lunit(tables.base, sx))
    return lhs - rhs
