"""
Çarks: the quotient graphs of cyclic hyperbolic subgroups.

A çark is a single spine loop with Farey branches. Reading the spine of the
cyclic normal form in blocks gives a cyclic word over P (an LS block) and M
(an LLS block); a P block carries its branch on one side of the spine and an
M block on the other.
"""

from __future__ import annotations
import re
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence, Tuple

from farey.errors import NotHyperbolic, ParseError
from farey.forms import QuadForm, check_form, pell_fundamental
from farey.words import (
    L,
    LL,
    Mat,
    S,
    TraceKind,
    Word,
    classify,
    conjugacy_normal_form,
    cyclic_normal_form,
    invert,
    matrix_to_word,
    normalize,
    rotation_key,
    word_to_matrix,
)

P = "P"
M = "M"

_BLOCK_LETTERS = {P: (L, S), M: (LL, S)}
_BLOCK_ORDER = {P: 0, M: 1}
_SWAP = {P: M, M: P}


def _least_rotation(spine: Sequence[str]) -> Tuple[str, ...]:
    rotations = [tuple(spine[i:]) + tuple(spine[:i]) for i in range(len(spine))]
    return min(rotations, key=lambda r: [_BLOCK_ORDER[x] for x in r])


def _period(spine: Sequence[str]) -> int:
    n = len(spine)
    for k in range(1, n + 1):
        if n % k == 0 and tuple(spine[:k]) * (n // k) == tuple(spine):
            return k
    return n


@dataclass(frozen=True)
class Cark:
    """
    A çark, stored as the least rotation of its spine (P before M).

    The multiplicity k is read off the spine: the spine is the k-th power of
    its primitive root.
    """
    spine: Tuple[str, ...]

    def __post_init__(self):
        spine = tuple(self.spine)
        if not spine or any(x not in _BLOCK_LETTERS for x in spine):
            raise ValueError(f"spine must be a nonempty word over P and M: {spine!r}")
        if P not in spine or M not in spine:
            raise ValueError("spine needs both P and M blocks")
        object.__setattr__(self, "spine", _least_rotation(spine))

    @property
    def multiplicity(self) -> int:
        return len(self.spine) // _period(self.spine)

    @property
    def root(self) -> Tuple[str, ...]:
        return self.spine[:_period(self.spine)]

    def __str__(self) -> str:
        text = "".join(self.root)
        return text if self.multiplicity == 1 else f"{text}^{self.multiplicity}"

    def __len__(self) -> int:
        return len(self.spine)


_CARK_PATTERN = re.compile(r"^\s*([PMpm]+)\s*(?:\^\s*(\d+))?\s*$")


def parse_cark(text: str) -> Cark:
    """
    Parse a spine such as "PPM" or "PM^2".

    Raises:
        ParseError: On malformed text or a spine missing P or M
    """
    match = _CARK_PATTERN.match(text)
    if not match:
        bad = next((ch for ch in text.strip() if ch.upper() not in "PM^0123456789 "), text)
        raise ParseError(f"çark must be a word over P and M: {text!r}", token=bad)
    power = int(match.group(2) or 1)
    if power < 1:
        raise ParseError("multiplicity must be positive", token=match.group(2))
    try:
        return Cark(tuple(match.group(1).upper()) * power)
    except ValueError as e:
        raise ParseError(str(e), token=text)


def _require_hyperbolic(w: Word):
    kind = classify(w)
    if kind.kind != TraceKind.HYPERBOLIC:
        raise NotHyperbolic(f"{w} is {kind}")


def word_to_cark(w: Word) -> Cark:
    """
    Çark of a hyperbolic element: the block sequence of its cyclic normal form.

    Raises:
        NotHyperbolic: For the identity, elliptic and parabolic elements
    """
    _require_hyperbolic(w)
    letters = cyclic_normal_form(w).letters
    blocks = [P if letters[i] == L else M for i in range(0, len(letters), 2)]
    return Cark(tuple(blocks))


def cark_to_word(c: Cark) -> Word:
    """Concatenate the blocks of the spine: P -> LS, M -> LLS."""
    return normalize([x for block in c.spine for x in _BLOCK_LETTERS[block]])


def carks_conjugate(a: Cark, b: Cark) -> bool:
    """Whether two çarks belong to conjugate elements."""
    return a.spine == b.spine


def is_reciprocal(c: Cark) -> bool:
    """Whether the spine, reversed with P and M swapped, is a rotation of itself."""
    mirrored = tuple(_SWAP[x] for x in reversed(c.spine))
    return _least_rotation(mirrored) == c.spine


def reciprocal_conjugator(w: Word) -> Optional[Word]:
    """
    An involution Z with Z·w·Z⁻¹ = w⁻¹, or None when w is not reciprocal.

    With c = h⁻¹wh cyclically reduced, the word S·c⁻¹·S is again a block word;
    when it is the rotation x⁻¹cx, Z = S·x⁻¹ conjugates c to c⁻¹.

    Raises:
        NotHyperbolic: For non-hyperbolic input
    """
    _require_hyperbolic(w)
    c, h = conjugacy_normal_form(w)
    target = normalize((S,) + invert(c).letters + (S,)).letters
    letters = c.letters
    best = None
    for j in range(0, len(letters), 2):
        if letters[j:] + letters[:j] != target:
            continue
        z = Word((S,)) * invert(Word(letters[:j]))
        for candidate in (z, z * c):
            if not (candidate * candidate).is_identity:
                continue
            if best is None or (len(candidate), rotation_key(candidate.letters)) < (len(best), rotation_key(best.letters)):
                best = candidate
    if best is None:
        return None
    return h * best * invert(h)


def _positive_trace(m: Mat) -> Tuple[int, int, int, int]:
    p, q, r, s = m.as_tuple()
    if p + s < 0:
        return -p, -q, -r, -s
    return p, q, r, s


def word_to_form(w: Word) -> QuadForm:
    """
    Form whose roots are the fixed points of w.

    With the positive-trace matrix (p,q;r,s) of w, the fixed-point equation
    rx² + (s-p)x - q = 0 gives (r, s-p, -q) divided by its positive gcd.

    Raises:
        NotHyperbolic: For non-hyperbolic input
    """
    _require_hyperbolic(w)
    p, q, r, s = _positive_trace(word_to_matrix(w))
    a, b, c = r, s - p, -q
    g = gcd(gcd(a, b), c)
    return QuadForm(a // g, b // g, c // g)


def fundamental_automorph(f: QuadForm) -> Mat:
    """((t - bu)/2, -cu; au, (t + bu)/2) for the least Pell solution (t, u)."""
    check_form(f)
    sol = pell_fundamental(f.discriminant)
    t, u = sol.t, sol.u
    return Mat((t - f.b * u) // 2, -f.c * u, f.a * u, (t + f.b * u) // 2)


def form_to_word(f: QuadForm) -> Word:
    """
    Hyperbolic element fixing the roots of f: its fundamental automorph.

    Raises:
        SquareDiscriminant: If the discriminant is a perfect square
        NotPrimitive: If f is not primitive
    """
    return matrix_to_word(fundamental_automorph(f))


def form_to_cark(f: QuadForm) -> Cark:
    """Çark of the cyclic subgroup attached to the class of f."""
    return word_to_cark(form_to_word(f))
