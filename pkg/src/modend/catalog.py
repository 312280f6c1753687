"""Construction of the bundled example categories.

These builders produce the same data as the JSON corpus shipped under
``instances/``; tests use them directly, the command-line layer goes through
the JSON files.
"""

from __future__ import annotations

from .fusioncat import FusionCategorySpec
from .scalarfield import FieldSpec


def one_simple_category(name: str = "vec") -> FusionCategorySpec:
    """The trivial base with a single simple (plain finite-dimensional spaces)."""
    field = FieldSpec([0, 1])
    return FusionCategorySpec(
        field=field, simples=["1"], unit="1", dual={"1": "1"},
        fusion=[("1", "1", "1")], f_symbols={}, name=name)


def vec_group(name: str, order: int, cocycle=None) -> FusionCategorySpec:
    """Pointed category of a cyclic group, with an optional 3-cocycle."""
    field = FieldSpec([0, 1])
    labels = [str(g) for g in range(order)]
    fusion = [(str(a), str(b), str((a + b) % order))
              for a in range(order) for b in range(order)]
    dual = {str(a): str((-a) % order) for a in range(order)}
    f_symbols = {}
    if cocycle is not None:
        for a in range(order):
            for b in range(order):
                for c in range(order):
                    val = cocycle(a, b, c)
                    if val != 1:
                        key = (str(a), str(b), str(c), str((a + b + c) % order),
                               str((a + b) % order), str((b + c) % order))
                        f_symbols[key] = field.rational(val)
    return FusionCategorySpec(field=field, simples=labels, unit="0", dual=dual,
                              fusion=fusion, f_symbols=f_symbols, name=name)


def vec_z2_triv() -> FusionCategorySpec:
    spec = vec_group("vec_z2_triv", 2)
    return FusionCategorySpec(field=spec.field, simples=["e", "s"], unit="e",
                              dual={"e": "e", "s": "s"},
                              fusion=[("e", "e", "e"), ("e", "s", "s"),
                                      ("s", "e", "s"), ("s", "s", "e")],
                              f_symbols={}, name="vec_z2_triv")


def vec_z2_omega() -> FusionCategorySpec:
    field = FieldSpec([0, 1])
    return FusionCategorySpec(
        field=field, simples=["e", "s"], unit="e", dual={"e": "e", "s": "s"},
        fusion=[("e", "e", "e"), ("e", "s", "s"), ("s", "e", "s"), ("s", "s", "e")],
        f_symbols={("s", "s", "s", "s", "e", "e"): field.rational(-1)},
        name="vec_z2_omega")


def vec_z4() -> FusionCategorySpec:
    return vec_group("vec_z4", 4)


def fib() -> FusionCategorySpec:
    """Fibonacci category over Q[x]/(x^4 + x^2 - 1); x is 1/sqrt(phi)."""
    field = FieldSpec([-1, 0, 1, 0, 1])
    t = field.gen()
    t2 = t * t
    fusion = [("1", "1", "1"), ("1", "tau", "tau"), ("tau", "1", "tau"),
              ("tau", "tau", "1"), ("tau", "tau", "tau")]
    f_symbols = {
        ("tau", "tau", "tau", "tau", "1", "1"): t2,
        ("tau", "tau", "tau", "tau", "1", "tau"): t,
        ("tau", "tau", "tau", "tau", "tau", "1"): t,
        ("tau", "tau", "tau", "tau", "tau", "tau"): -t2,
    }
    return FusionCategorySpec(field=field, simples=["1", "tau"], unit="1",
                              dual={"1": "1", "tau": "tau"}, fusion=fusion,
                              f_symbols=f_symbols, name="fib")


def ising() -> FusionCategorySpec:
    """Ising category over Q[x]/(x^2 - 2); x is sqrt(2)."""
    field = FieldSpec([-2, 0, 1])
    r = field.gen()                     # sqrt(2)
    h = r * field.rational("1/2")       # 1/sqrt(2)
    labels = ["1", "psi", "sigma"]
    fusion = [("1", "1", "1"), ("1", "psi", "psi"), ("psi", "1", "psi"),
              ("1", "sigma", "sigma"), ("sigma", "1", "sigma"),
              ("psi", "psi", "1"),
              ("psi", "sigma", "sigma"), ("sigma", "psi", "sigma"),
              ("sigma", "sigma", "1"), ("sigma", "sigma", "psi")]
    neg = field.rational(-1)
    f_symbols = {
        ("sigma", "sigma", "sigma", "sigma", "1", "1"): h,
        ("sigma", "sigma", "sigma", "sigma", "1", "psi"): h,
        ("sigma", "sigma", "sigma", "sigma", "psi", "1"): h,
        ("sigma", "sigma", "sigma", "sigma", "psi", "psi"): -h,
        ("psi", "sigma", "psi", "sigma", "sigma", "sigma"): neg,
        ("sigma", "psi", "sigma", "psi", "sigma", "sigma"): neg,
    }
    return FusionCategorySpec(field=field, simples=labels, unit="1",
                              dual={"1": "1", "psi": "psi", "sigma": "sigma"},
                              fusion=fusion, f_symbols=f_symbols, name="ising")


def all_categories() -> dict:
    return {spec.name: spec for spec in
            (vec_z2_triv(), vec_z2_omega(), vec_z4(), fib(), ising())}


def vec_over_vec_z2(base: FusionCategorySpec):
    """The one-simple module over trivial vec_z2, with its forgetful functor.

    Returns ``(module, regular, forgetful)`` where the forgetful functor sends
    the unique simple to the regular algebra object ``e + s``.
    """
    from .modcat import ModuleCategorySpec, regular_module
    from .modfunct import ModuleFunctorSpec
    from .scalarfield import Matrix

    field = base.field
    action = [("e", "m", "m"), ("s", "m", "m")]
    l_symbols = {}
    module = ModuleCategorySpec(base=base, simples=["m"], action=action,
                                l_symbols=l_symbols, name="vec_over_vec_z2")
    reg = regular_module(base)
    on_simples = {("m", "e"): 1, ("m", "s"): 1}
    one = field.one
    zero = field.zero
    c_symbols = {
        # rows (k, copy, t) over X act F(m); cols (t_src, k, copy) over F(X act m)
        ("e", "m"): Matrix(field, 2, 2, [one, zero, zero, one]),
        ("s", "m"): Matrix(field, 2, 2, [zero, one, one, zero]),
    }
    forgetful = ModuleFunctorSpec(module, reg, on_simples, c_symbols, name="forgetful")
    return module, reg, forgetful
