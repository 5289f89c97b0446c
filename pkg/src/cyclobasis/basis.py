"""The real/imaginary basis D_n of Q(omega_n) and exact decompositions in it.

A basis element is a product, over the prime-power factors q_i of n, of one
atom per factor. An atom ``A`` with exponent e stands for cos(2 pi e / q) and
an atom ``B`` stands for i sin(2 pi e / q). For q in {1, 2} the only atom is
``A`` with exponent 0, the constant 1.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .arith import Factorization, crt_components, euler_phi, factorize, format_rational, parse_rational


class ZeroDenominatorVector(ZeroDivisionError):
    """Raised by :func:`proportionality` when the reference vector is zero."""


class Atom(NamedTuple):
    q: int
    part: str  # "A" (real part) or "B" (i times imaginary part)
    exponent: int

    def __str__(self) -> str:
        return f"{self.part}{self.q}.{self.exponent}"

    @classmethod
    def parse(cls, text: str) -> "Atom":
        part, rest = text[0], text[1:]
        q, _, e = rest.partition(".")
        if part not in "AB" or not q.isdigit() or not e.isdigit():
            raise ValueError(f"bad basis atom {text!r}")
        return cls(int(q), part, int(e))


Key = tuple[Atom, ...]
LocalMap = dict[Atom, int]


def key_to_str(key: Key) -> str:
    return "*".join(map(str, key))


def key_from_str(text: str) -> Key:
    return tuple(Atom.parse(a) for a in text.split("*"))


def parity(key: Key) -> int:
    """Number of B atoms; the key's value is real iff this is even."""
    return sum(a.part == "B" for a in key)


def basis_moduli(n: int) -> tuple[int, ...]:
    """Prime-power factors of n; n = 1 is treated as the single factor 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return tuple(p**e for p, e in factorize(n)) or (1,)


def local_atoms(q: int) -> tuple[Atom, ...]:
    """Atoms of D_q for a prime power q (or q = 1), A before B."""
    if q in (1, 2):
        return (Atom(q, "A", 0),)
    if q % 2 == 0:
        quarter = q // 4
        return tuple(Atom(q, "A", e) for e in range(quarter)) + tuple(
            Atom(q, "B", e) for e in range(1, quarter + 1)
        )
    half = euler_phi(q) // 2
    return tuple(Atom(q, "A", e) for e in range(1, half + 1)) + tuple(
        Atom(q, "B", e) for e in range(1, half + 1)
    )


@dataclass(frozen=True)
class BasisDescriptor:
    n: int
    factorization: Factorization
    keys: tuple[Key, ...]

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def index(self) -> dict[Key, int]:
        return _key_index(self.n)


@lru_cache(maxsize=None)
def build_basis(n: int) -> BasisDescriptor:
    """All product keys of D_n in canonical order; there are euler_phi(n)."""
    per_factor = [local_atoms(q) for q in basis_moduli(n)]
    keys = tuple(itertools.product(*per_factor))
    return BasisDescriptor(n, factorize(n), keys)


@lru_cache(maxsize=None)
def _key_index(n: int) -> dict[Key, int]:
    return {k: i for i, k in enumerate(build_basis(n).keys)}


def decompose_prime_power(q: int, s: int) -> tuple[LocalMap, LocalMap]:
    """Coordinates of Re(omega_q**s) and i Im(omega_q**s) for an odd prime power q."""
    (p, k), = factorize(q)
    if p == 2:
        raise ValueError(f"{q} is not an odd prime power")
    s %= q
    half = euler_phi(q) // 2
    block = q // p  # p**(k-1)

    def folded(e: int, sign: int, re: LocalMap, im: LocalMap) -> None:
        # e lies outside the gap (half, q - half) and is nonzero
        if e <= half:
            _bump(re, Atom(q, "A", e), sign)
            _bump(im, Atom(q, "B", e), sign)
        else:
            _bump(re, Atom(q, "A", q - e), sign)
            _bump(im, Atom(q, "B", q - e), -sign)

    re: LocalMap = {}
    im: LocalMap = {}
    if s == 0:
        # 1 = -(sum of the nontrivial p-th roots of unity); conjugate pairs collapse
        for j in range(1, (p - 1) // 2 + 1):
            re[Atom(q, "A", j * block)] = -2
    elif s <= half or s >= q - half:
        folded(s, 1, re, im)
    else:
        # the p exponents congruent to s mod p**(k-1) sum to zero
        r, s0 = divmod(s, block)
        for j in range(p):
            if j != r:
                folded(j * block + s0, -1, re, im)
    return _strip(re), _strip(im)


def decompose_two_power(q: int, s: int) -> tuple[LocalMap, LocalMap]:
    """Coordinates of Re(omega_q**s) and i Im(omega_q**s) for q = 2**k."""
    if q < 1 or q & (q - 1):
        raise ValueError(f"{q} is not a power of two")
    s %= q
    if q <= 2:
        return {Atom(q, "A", 0): -1 if s else 1}, {}
    quarter = q // 4
    re: LocalMap = {}
    im: LocalMap = {}
    if s > 2 * quarter:
        re, im = decompose_two_power(q, q - s)
        return re, {a: -c for a, c in im.items()}
    if s <= quarter:
        if s < quarter:
            re[Atom(q, "A", s)] = 1
        if s > 0:
            im[Atom(q, "B", s)] = 1
    else:
        mirror = 2 * quarter - s
        re[Atom(q, "A", mirror)] = -1
        if mirror > 0:
            im[Atom(q, "B", mirror)] = 1
    return re, im


def decompose_local(q: int, s: int) -> tuple[LocalMap, LocalMap]:
    if q == 1 or q % 2 == 0:
        return decompose_two_power(q, s)
    return decompose_prime_power(q, s)


def _bump(m: LocalMap, atom: Atom, c: int) -> None:
    m[atom] = m.get(atom, 0) + c


def _strip(m: LocalMap) -> LocalMap:
    return {a: c for a, c in m.items() if c}


@dataclass(frozen=True, eq=False)
class CoordVector:
    """Sparse rational coordinates over D_n; zero entries are never stored."""

    n: int
    entries: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {k: Fraction(c) for k, c in self.entries.items() if c}
        object.__setattr__(self, "entries", clean)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoordVector):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.entries.items())))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: Key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def _check(self, other: "CoordVector") -> None:
        if self.n != other.n:
            raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "CoordVector") -> "CoordVector":
        self._check(other)
        out = dict(self.entries)
        for k, c in other.entries.items():
            out[k] = out.get(k, 0) + c
        return CoordVector(self.n, out)

    def __neg__(self) -> "CoordVector":
        return CoordVector(self.n, {k: -c for k, c in self.entries.items()})

    def __sub__(self, other: "CoordVector") -> "CoordVector":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "CoordVector":
        return CoordVector(self.n, {k: c * v for k, v in self.entries.items()})

    __rmul__ = scale

    def items(self) -> list[tuple[Key, Fraction]]:
        """Entries in canonical basis order."""
        return sorted(self.entries.items())

    def to_json(self) -> dict[str, str]:
        return {key_to_str(k): format_rational(c) for k, c in self.items()}

    @classmethod
    def from_json(cls, n: int, data: Mapping[str, str]) -> "CoordVector":
        index = _key_index(n)
        entries = {}
        for text, value in data.items():
            key = key_from_str(text)
            if key not in index:
                raise ValueError(f"{text} is not a basis key for n={n}")
            entries[key] = parse_rational(value)
        return cls(n, entries)

    def __repr__(self) -> str:
        return f"CoordVector({self.n}, {json.dumps(self.to_json())})"


def _expand(n: int, locals_: Iterable[tuple[LocalMap, LocalMap]]) -> tuple[CoordVector, CoordVector]:
    # product of (re_i + im_i); B-count parity sorts each term into re or im
    terms: dict[Key, int] = {(): 1}
    for re_i, im_i in locals_:
        merged = list(re_i.items()) + list(im_i.items())
        terms = {key + (atom,): c * d for key, c in terms.items() for atom, d in merged}
    re = {k: c for k, c in terms.items() if parity(k) % 2 == 0}
    im = {k: c for k, c in terms.items() if parity(k) % 2 == 1}
    return CoordVector(n, re), CoordVector(n, im)


@lru_cache(maxsize=65536)
def _decompose_cached(n: int, t: int) -> tuple[CoordVector, CoordVector]:
    if n == 1:
        return _expand(1, [decompose_local(1, 0)])
    return _expand(n, [decompose_local(q, s) for q, s in crt_components(n, t)])


def decompose_root(n: int, t: int) -> tuple[CoordVector, CoordVector]:
    """Exact coordinates of Re(omega_n**t) and i Im(omega_n**t) over D_n.

    >>> re, im = decompose_root(12, 3)
    >>> im.to_json()
    {'B4.1*A3.1': '-2/1'}
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return _decompose_cached(n, t % n)


def proportionality(u: CoordVector, v: CoordVector) -> Fraction | None:
    """The rational lam with u == lam * v, or None when no such lam exists."""
    u._check(v)
    if not v:
        raise ZeroDenominatorVector("reference vector is zero")
    if not u:
        return Fraction(0)
    # a nonzero multiple has exactly the same support
    if len(u) != len(v) or u.entries.keys() != v.entries.keys():
        return None
    key, ref = next(iter(v.entries.items()))
    lam = u[key] / ref
    for k, c in v.entries.items():
        if u.entries[k] != lam * c:
            return None
    return lam
