"""Exact integer and rational helpers shared by every other module.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

Factorization = tuple[tuple[int, int], ...]


class NotInvertible(ArithmeticError):
    """Raised when an inverse modulo m does not exist."""


def factorize(n: int) -> Factorization:
    """Prime factorization of ``n`` by trial division, primes increasing.

    >>> factorize(12)
    ((2, 2), (3, 1))
    >>> factorize(1)
    ()
    """
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    return _factorize(n)


@lru_cache(maxsize=4096)
def _factorize(n: int) -> Factorization:
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    # 6k +- 1 wheel
    p, step = 5, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_powers(n: int) -> tuple[int, ...]:
    """The pairwise coprime factors ``p**e`` of ``n`` in increasing prime order."""
    return tuple(p**e for p, e in factorize(n))


def euler_phi(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(n))


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} has no inverse modulo {m}")
    return pow(a, -1, m)


def crt_components(n: int, t: int) -> tuple[tuple[int, int], ...]:
    """Split ``t`` so that ``omega_n**t`` is a product of prime-power roots.

    Returns ``(q_i, s_i)`` pairs with ``sum(s_i * n // q_i) == t (mod n)`` and
    ``0 <= s_i < q_i``. ``t`` may be any integer; it is reduced modulo ``n``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    t %= n
    out = []
    for q in prime_powers(n):
        cofactor = n // q
        out.append((q, t * mod_inverse(cofactor, q) % q))
    assert sum(s * (n // q) for q, s in out) % n == t
    return tuple(out)


def format_rational(x: Fraction | int) -> str:
    """Render as ``"num/den"``; the denominator is always written, even 1."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal. No whitespace, no floats."""
    if not text or text != text.strip() or any(c.isspace() for c in text):
        raise ValueError(f"bad rational {text!r}")
    num, sep, den = text.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), d)
    except ValueError as exc:
        raise ValueError(f"bad rational {text!r}: expected p/q") from exc
