"""
Exact algebra in the modular group PSL(2,Z), the free product of Z/2 and Z/3.

Elements are words over S (order 2) and L (order 3). L squared is kept as the
single letter LL, so a normalized word alternates between S and one of
{L, LL}.
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from farey.errors import ParseError

S = "S"
L = "L"
LL = "LL"
LETTERS = (S, L, LL)

# Letter order used for canonical rotations: S < L < LL
LETTER_ORDER = {S: 0, L: 1, LL: 2}

_L_LETTER = {1: L, 2: LL}
_INVERSE_LETTER = {S: S, L: LL, LL: L}

# Raw input tokens accepted by normalize()
_RAW_TOKENS = {
    "S": (S, 0),
    "L": (L, 1),
    "LL": (L, 2),
    "L^-1": (L, 2),
    "L⁻¹": (L, 2),
}


def _is_normal(letters: Sequence[str]) -> bool:
    for i, letter in enumerate(letters):
        if letter not in LETTER_ORDER:
            return False
        if i and (letter == S) == (letters[i - 1] == S):
            return False
    return True


@dataclass(frozen=True)
class Word:
    """A normalized element of PSL(2,Z); the empty word is the identity."""
    letters: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not _is_normal(self.letters):
            raise ValueError(f"not a normalized word: {self.letters!r}")

    def __str__(self) -> str:
        return "".join(self.letters) if self.letters else "1"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return normalize(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else invert(self)
        return normalize(base.letters * abs(k))

    @property
    def is_identity(self) -> bool:
        return not self.letters


IDENTITY = Word()


def normalize(raw: Iterable[str]) -> Word:
    """
    Reduce a raw sequence over {S, L, L^-1, LL} to its normal form.

    Rewrites L^-1 to LL and cancels SS and LLL until nothing changes.

    Raises:
        ParseError: If the sequence holds an unknown token
    """
    stack: List[Tuple[str, int]] = []
    for token in raw:
        if token not in _RAW_TOKENS:
            raise ParseError(f"unknown letter {token!r}", token=str(token))
        kind, power = _RAW_TOKENS[token]
        if kind == S:
            if stack and stack[-1][0] == S:
                stack.pop()
            else:
                stack.append((S, 0))
            continue
        if stack and stack[-1][0] == L:
            power = (stack.pop()[1] + power) % 3
        if power:
            stack.append((L, power))
    return Word(tuple(S if kind == S else _L_LETTER[power] for kind, power in stack))


@dataclass(frozen=True)
class Mat:
    """
    A 2x2 integer matrix of determinant 1, taken up to global sign.

    The stored representative has its first nonzero entry (reading order
    p, q, r, s) positive.
    """
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError(f"determinant of ({self}) is not 1")
        first = next(x for x in (self.p, self.q, self.r, self.s) if x != 0)
        if first < 0:
            for name in ("p", "q", "r", "s"):
                object.__setattr__(self, name, -getattr(self, name))

    def __str__(self) -> str:
        return f"{self.p},{self.q};{self.r},{self.s}"

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    @property
    def trace(self) -> int:
        return self.p + self.s

    def inverse(self) -> "Mat":
        return Mat(self.s, -self.q, -self.r, self.p)

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    @classmethod
    def identity(cls) -> "Mat":
        return cls(1, 0, 0, 1)


GENERATOR_MATRICES = {
    S: Mat(0, -1, 1, 0),
    L: Mat(1, -1, 1, 0),
    LL: Mat(0, -1, 1, -1),
}


def word_to_matrix(w: Word) -> Mat:
    """Multiply out the generator matrices of w, left to right."""
    m = Mat.identity()
    for letter in w.letters:
        m = m @ GENERATOR_MATRICES[letter]
    return m


def _translation(k: int) -> List[str]:
    # T = LS is (1,1;0,1); T^-1 = S LL
    if k >= 0:
        return [L, S] * k
    return [S, LL] * -k


def matrix_to_word(m: Mat) -> Word:
    """
    Recover the normal-form word of a matrix.

    Euclidean descent on the first column: peel off T^k S factors until the
    lower-left entry vanishes, then finish with a translation.
    """
    p, q, r, s = m.as_tuple()
    raw: List[str] = []
    while r != 0:
        k = p // r
        raw.extend(_translation(k))
        p, q = p - k * r, q - k * s
        raw.append(S)
        p, q, r, s = r, s, -p, -q
    # r == 0 forces p == s == ±1
    raw.extend(_translation(q * p))
    return normalize(raw)


class TraceKind(Enum):
    """Conjugacy type of an element, read off the absolute trace."""
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class TraceClass:
    """Trace classification of an element."""
    kind: TraceKind
    abs_trace: int
    order: Optional[int] = None  # elliptic elements only

    def __str__(self) -> str:
        if self.kind == TraceKind.ELLIPTIC:
            return f"elliptic order={self.order} trace={self.abs_trace}"
        return f"{self.kind.value} trace={self.abs_trace}"


def classify(w: Word) -> TraceClass:
    """Classify w as identity, elliptic, parabolic or hyperbolic."""
    t = abs(word_to_matrix(w).trace)
    if w.is_identity:
        return TraceClass(TraceKind.IDENTITY, t)
    if t == 0:
        return TraceClass(TraceKind.ELLIPTIC, t, order=2)
    if t == 1:
        return TraceClass(TraceKind.ELLIPTIC, t, order=3)
    if t == 2:
        return TraceClass(TraceKind.PARABOLIC, t)
    return TraceClass(TraceKind.HYPERBOLIC, t)


def invert(w: Word) -> Word:
    """Inverse element: reverse the word and swap L with LL."""
    return Word(tuple(_INVERSE_LETTER[x] for x in reversed(w.letters)))


def rotation_key(letters: Sequence[str]) -> Tuple[int, ...]:
    return tuple(LETTER_ORDER[x] for x in letters)


def conjugacy_normal_form(w: Word) -> Tuple[Word, Word]:
    """
    Canonical conjugate of w together with a conjugator.

    Returns (c, h) with c = h^-1 w h. The word is first cyclically reduced,
    then rotated through whole (L-letter, S) pairs to the least rotation in
    the order S < L < LL.
    """
    cur = w
    h = IDENTITY
    while not is_cyclically_reduced(cur):
        first, last = cur.letters[0], cur.letters[-1]
        if first == S:
            # S u S ~ u
            cur = Word(cur.letters[1:-1])
            h = h * Word((S,))
        else:
            # x u y ~ (y x) u
            y = Word((last,))
            cur = normalize((last,) + cur.letters[:-1])
            h = h * invert(y)

    if len(cur) < 2:
        return cur, h

    letters = cur.letters
    best = None
    for j in range(len(letters)):
        if letters[j] == S:
            continue
        rotated = letters[j:] + letters[:j]
        if best is None or rotation_key(rotated) < rotation_key(best[0]):
            best = (rotated, j)
    rotated, j = best
    return Word(rotated), h * Word(letters[:j])


def cyclic_normal_form(w: Word) -> Word:
    """Canonical representative of the conjugacy class of w."""
    return conjugacy_normal_form(w)[0]


def is_cyclically_reduced(w: Word) -> bool:
    """Odd words of length 3 or more begin and end with letters that cancel cyclically."""
    return len(w) < 2 or len(w) % 2 == 0


def enumerate_words(max_length: int) -> List[Word]:
    """All normalized words of length at most max_length, shortest first."""
    words = [IDENTITY]
    layer = [()]
    for _ in range(max_length):
        nxt = []
        for letters in layer:
            if not letters:
                choices = LETTERS
            elif letters[-1] == S:
                choices = (L, LL)
            else:
                choices = (S,)
            nxt.extend(letters + (x,) for x in choices)
        words.extend(Word(x) for x in nxt)
        layer = nxt
    return words


class _WordParser:
    """Recursive-descent parser for word text such as "LSLLS" or "(LS)^6"."""

    def __init__(self, text: str):
        self.text = text.strip().upper().replace("⁻¹", "^-1")
        self.pos = 0

    def parse(self) -> List[str]:
        if self.text in ("", "1"):
            return []
        raw = self._sequence()
        if self.pos < len(self.text):
            self._fail()
        return raw

    def _peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos] in " \t·*.":
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self):
        token = self.text[self.pos:self.pos + 1] or "<end>"
        raise ParseError(f"unexpected {token!r} at position {self.pos} in word", token=token)

    def _sequence(self) -> List[str]:
        raw: List[str] = []
        while self._peek() not in ("", ")"):
            raw.extend(self._item())
        return raw

    def _item(self) -> List[str]:
        atom = self._atom()
        if self._peek() == "^":
            self.pos += 1
            k = self._integer()
            base = atom if k >= 0 else [_INVERSE_LETTER[x] for x in reversed(atom)]
            atom = base * abs(k)
        return atom

    def _atom(self) -> List[str]:
        c = self._peek()
        if c in (S, L):
            self.pos += 1
            return [c]
        if c == "(":
            self.pos += 1
            inner = self._sequence()
            if self._peek() != ")":
                self._fail()
            self.pos += 1
            return inner
        self._fail()

    def _integer(self) -> int:
        self._peek()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            self.pos = start
            self._fail()


def parse_word(text: str) -> Word:
    """
    Parse word text, case-insensitively.

    Accepts letters S and L, groups with integer powers ("(LS)^6", "L^-1"),
    and "1" or the empty string for the identity.

    Raises:
        ParseError: On malformed text, naming the offending token
    """
    return normalize(_WordParser(text).parse())


def parse_matrix(text: str) -> Mat:
    """
    Parse matrix text "p,q;r,s".

    Raises:
        ParseError: If the text is malformed or the determinant is not 1
    """
    rows = text.strip().strip("()").split(";")
    if len(rows) != 2:
        raise ParseError(f"matrix needs two rows separated by ';': {text!r}", token=text)
    entries: List[int] = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ParseError(f"matrix row needs two entries: {row!r}", token=row)
        for cell in cells:
            try:
                entries.append(int(cell.strip()))
            except ValueError:
                raise ParseError(f"not an integer: {cell.strip()!r}", token=cell.strip())
    try:
        return Mat(*entries)
    except ValueError as e:
        raise ParseError(str(e), token=text)
