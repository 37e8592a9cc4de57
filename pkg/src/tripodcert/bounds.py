"""Exact bound arithmetic for the packing/hitting trade-off.

All values are Python integers, so the towers produced by the iterative
route are exact no matter how large they get.  The onion-star threshold
``g5`` has no known closed form; it is supplied as a :class:`G5` and every
other function is derived from it.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable

from .errors import PreconditionError

__all__ = ["ROUTES", "BoundTable", "G5", "default_bounds", "g10", "iterate", "ramsey",
           "transitive"]

ROUTES = ("ramsey", "iterative")


def ramsey(a: int, b: int) -> int:
    """Vertex count forcing a clique of size ``a`` or an independent set of size ``b``."""
    if a < 1 or b < 1:
        raise PreconditionError("Ramsey arguments must be positive")
    return comb(a + b - 2, a - 1)


def transitive(c: int) -> int:
    """Vertex count forcing a transitive tournament of order ``c`` in a semi-complete digraph."""
    if c < 1:
        raise PreconditionError("tournament order must be positive")
    return 2 ** (c - 1)


def g10(ell: int) -> int:
    """Linkage size that one crossing-path split step consumes for target ``ell``."""
    if ell < 1:
        raise PreconditionError("g10 needs a positive argument")
    p = ell * ell
    return ell * (ell + p + p * ell)


def iterate(f: Callable[[int], int], times: int, x: int) -> int:
    for _ in range(times):
        x = f(x)
    return x


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow, ast.Mod: operator.mod}


def _compile_expr(text: str) -> Callable[[int], int]:
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise PreconditionError(f"cannot parse g5 expression {text!r}: {exc.msg}") from None

    def ev(node, t):
        if isinstance(node, ast.Expression):
            return ev(node.body, t)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name) and node.id == "t":
            return t
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, t), ev(node.right, t))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, t)
        raise PreconditionError(f"unsupported syntax in g5 expression {text!r}")

    ev(tree, 1)  # reject bad syntax early
    return lambda t: ev(tree, t)


@dataclass(frozen=True)
class G5:
    """The onion-star threshold, as an integer expression in ``t`` or an explicit table.

    ``G5.parse("t")`` is the default; ``G5.parse("1:1,2:3")`` fixes values
    for the listed arguments only.
    """

    spec: str = "t"
    _fn: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_fn", self._build(self.spec))

    @staticmethod
    def _build(spec: str) -> Callable[[int], int]:
        text = spec.strip()
        if ":" in text:
            table = {}
            for item in text.split(","):
                key, _, value = item.partition(":")
                try:
                    table[int(key)] = int(value)
                except ValueError:
                    raise PreconditionError(f"bad g5 table entry {item!r}") from None

            def lookup(t: int) -> int:
                if t not in table:
                    raise PreconditionError(f"g5 table has no entry for {t}")
                return table[t]

            return lookup
        return _compile_expr(text)

    @classmethod
    def parse(cls, spec: str) -> "G5":
        return cls(spec)

    def __call__(self, t: int) -> int:
        value = self._fn(t)
        if not isinstance(value, int) or value < 1:
            raise PreconditionError(f"g5({t}) = {value!r} is not a positive integer")
        return value


@dataclass(frozen=True)
class BoundTable:
    """Every bound function, derived from ``g5``; ``route`` selects which g4 feeds f1."""

    g5: G5 = field(default_factory=G5)
    route: str = "ramsey"

    def __post_init__(self) -> None:
        if self.route not in ROUTES:
            raise PreconditionError(f"route must be one of {ROUTES}, not {self.route!r}")
        # per-instance caches; the dataclass is frozen so they never go stale
        object.__setattr__(self, "_cache", {})

    def _memo(self, name: str, k: int, compute: Callable[[], int]) -> int:
        key = (name, k)
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @staticmethod
    def _positive(k: int) -> None:
        if not isinstance(k, int) or k < 1:
            raise PreconditionError(f"bound argument must be a positive integer, got {k!r}")

    def g9(self, k: int) -> int:
        self._positive(k)
        return self._memo("g9", k, lambda: iterate(g10, k, self.g5(k)))

    def g4_ramsey(self, k: int) -> int:
        self._positive(k)
        return self._memo("g4r", k, lambda: ramsey(transitive(2 * self.g5(k)), k))

    def g4_iterative(self, k: int) -> int:
        self._positive(k)
        return self._memo("g4i", k, lambda: k * (2 * self.g9(k) - 1))

    def g4(self, k: int) -> int:
        return self.g4_ramsey(k) if self.route == "ramsey" else self.g4_iterative(k)

    def f1(self, k: int) -> int:
        self._positive(k)
        value = 0
        for j in range(2, k + 1):
            value = 2 * value + 2 * self.g4(j)
        return value

    def with_route(self, route: str) -> "BoundTable":
        return BoundTable(self.g5, route)

    def snapshot(self, k: int) -> dict:
        return {"k": k, "g5": self.g5.spec, "route": self.route, "f1": self.f1(k)}

    def rows(self, k: int) -> list:
        """(name, value) pairs for display, in a fixed order."""
        return [("g5", self.g5(k)), ("g9", self.g9(k)), ("g4_ramsey", self.g4_ramsey(k)),
                ("g4_iterative", self.g4_iterative(k)), ("g4", self.g4(k)), ("f1", self.f1(k))]


@lru_cache(maxsize=None)
def default_bounds(route: str = "ramsey") -> BoundTable:
    return BoundTable(G5("t"), route)
