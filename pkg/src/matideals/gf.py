"""Finite fields F_q, q = p^e.

Elements are plain integers ("codes") in ``[0, q)``.  The code of an element
is ``sum(c_i * p**i)`` where ``c_i`` is the coefficient of ``x**i`` in its
polynomial representative modulo the field's irreducible ``modulus``.  Code 0
is zero and code 1 is one.  Addition and multiplication are table driven.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

DEFAULT_MAX_ORDER = 256


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, e)`` with ``q == p**e``; raise if impossible."""
    if q < 2:
        raise FieldError(f"field order must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


# Polynomials over F_p are coefficient lists, constant term first.

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(modulus) - 1
    if e < 1:
        return False
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``e`` over F_p.

    Candidates are compared coefficient by coefficient starting from the
    constant term.
    """
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")  # pragma: no cover


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(coeffs: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * p + c
    return code


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with its addition, multiplication and inverse tables."""

    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    neg_table: tuple[int, ...] = field(repr=False, compare=False)
    inv_table: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_table[a]

    def elements(self) -> range:
        return range(self.q)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __str__(self) -> str:
        return f"F_{self.q}"


def field_new(
    p: int,
    e: int = 1,
    modulus: Optional[Sequence[int]] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FieldSpec:
    """Build and validate F_{p^e}.

    With ``modulus`` omitted and ``e > 1`` the smallest irreducible from
    :func:`smallest_irreducible` is used.  For ``e == 1`` the modulus is the
    constant ``[0, 1]`` (the polynomial ``x``) and plays no role.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    q = p ** e
    if q > max_order:
        raise FieldError(f"field order {q} exceeds bound {max_order}")

    if modulus is None:
        mod = [0, 1] if e == 1 else smallest_irreducible(p, e)
    else:
        mod = [int(c) for c in modulus]
        if len(mod) != e + 1 or any(not 0 <= c < p for c in mod):
            raise FieldError(f"modulus must be {e + 1} coefficients in [0, {p})")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if e > 1 and not is_irreducible(mod, p):
            raise FieldError(f"modulus {mod} is reducible over F_{p}")

    digits = [_digits(a, p, e) for a in range(q)]
    add = tuple(
        tuple(_undigits([(x + y) % p for x, y in zip(da, db)], p) for db in digits)
        for da in digits
    )
    if e == 1:
        mul = tuple(tuple(a * b % p for b in range(q)) for a in range(q))
    else:
        rows = []
        for da in digits:
            row = []
            for db in digits:
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                r = _poly_mod(prod, mod, p)
                row.append(_undigits(r + [0] * (e - len(r)), p))
            rows.append(tuple(row))
        mul = tuple(rows)
    neg = tuple(row.index(0) for row in add)
    inv = [0] * q
    for a in range(1, q):
        inv[a] = mul[a].index(1)
    return FieldSpec(p, e, tuple(mod), add, mul, neg, tuple(inv))


def field_from_order(q: int, modulus: Optional[Sequence[int]] = None, max_order: int = DEFAULT_MAX_ORDER) -> FieldSpec:
    p, e = prime_power(q)
    return field_new(p, e, modulus, max_order=max_order)


def field_from_json(obj: dict) -> FieldSpec:
    e = obj.get("e", 1)
    modulus = obj.get("modulus") if e > 1 else None
    return field_new(obj["p"], e, modulus)


def f_add(a: int, b: int, F: FieldSpec) -> int:
    return F.add_table[a][b]


def f_mul(a: int, b: int, F: FieldSpec) -> int:
    return F.mul_table[a][b]


def f_neg(a: int, F: FieldSpec) -> int:
    return F.neg_table[a]


def f_inv(a: int, F: FieldSpec) -> int:
    return F.inv(a)


def enumerate_elements(F: FieldSpec) -> list[int]:
    return list(range(F.q))
