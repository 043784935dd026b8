"""Signed permutations in array form.

A signed permutation of degree n acts on the points 1..n and carries an
overall sign.  The sign is encoded with two extra points: a permutation
is stored as a tuple ``images`` of length n+2 where ``images[i-1]`` is
the image of point i (1-based values).  The last two points n+1, n+2 are
the sign pair: they map to (n+1, n+2) for sign +1 and to (n+2, n+1) for
sign -1, and are never mixed with the ordinary points.

With this encoding, negation of a permutation only touches the tail of
the array, so +g and -g are adjacent when arrays are sorted
lexicographically — which is how the canonicalization engines detect
that a configuration is equal to minus itself (a zero tensor).

Composition is ``compose(a, b) = a∘b``: first apply b, then a, i.e.
``compose(a, b)[i] = a[b[i]]``.
"""

from __future__ import annotations

import re


class SignedPermutation:
    """An immutable signed permutation in array form."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @property
    def degree(self):
        """Number of ordinary points (excludes the sign pair)."""
        return len(self.images) - 2

    @property
    def sign(self):
        n = self.degree
        return 1 if self.images[n] == n + 1 else -1

    def __getitem__(self, point):
        """Image of 1-based ``point``."""
        return self.images[point - 1]

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __le__(self, other):
        return self.images <= other.images

    def __repr__(self):
        return f"SignedPermutation({list(self.images)})"

    def __str__(self):
        return format_array(self)

    def is_identity(self):
        return all(img == i + 1 for i, img in enumerate(self.images))

    def negated(self):
        """Return the same permutation with the opposite sign."""
        n = self.degree
        imgs = list(self.images)
        imgs[n], imgs[n + 1] = imgs[n + 1], imgs[n]
        return SignedPermutation(imgs)


def identity(n):
    """The identity signed permutation of degree n."""
    return SignedPermutation(range(1, n + 3))


def from_signed_cycles(n, sign, cycles):
    """Build a signed permutation of degree n from disjoint cycles.

    ``cycles`` is an iterable of tuples of 1-based points; a cycle
    (a, b, c) means a -> b -> c -> a.  ``sign`` is +1 or -1.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    imgs = list(range(1, n + 3))
    seen = set()
    for cyc in cycles:
        cyc = list(cyc)
        for p in cyc:
            if not 1 <= p <= n:
                raise ValueError(f"point {p} out of range 1..{n}")
            if p in seen:
                raise ValueError(f"point {p} repeated across cycles")
            seen.add(p)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            imgs[a - 1] = b
    if sign == -1:
        imgs[n], imgs[n + 1] = imgs[n + 1], imgs[n]
    return SignedPermutation(imgs)


def compose(a, b):
    """a∘b: apply b first, then a.  ``compose(a, b)[i] == a[b[i]]``."""
    ai = a.images
    return SignedPermutation(ai[x - 1] for x in b.images)


def inverse(p):
    imgs = [0] * len(p.images)
    for i, img in enumerate(p.images):
        imgs[img - 1] = i + 1
    return SignedPermutation(imgs)


def apply(p, point):
    """Image of 1-based ``point`` under p."""
    return p.images[point - 1]


def preimage(p, point):
    """The point mapped to ``point`` by p (i.e. inverse image)."""
    return p.images.index(point) + 1


def sign_of(p):
    return p.sign


def lex_compare(a, b):
    """-1, 0 or +1 comparing the image arrays lexicographically."""
    if a.images < b.images:
        return -1
    if a.images > b.images:
        return 1
    return 0


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, n):
    """Parse a signed cycle string like ``-(1,2)(3,4)`` or ``+(1,3)(2,4)``.

    A bare ``()`` or empty cycle part denotes the identity of the given
    sign.  Whitespace is ignored.
    """
    s = text.strip().replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    elif s.startswith("+"):
        s = s[1:]
    body = s
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(body):
        if m.start() != pos:
            raise ValueError(f"malformed cycle string: {text!r}")
        pos = m.end()
        inner = m.group(1).strip()
        if inner:
            cycles.append(tuple(int(t) for t in inner.split(",")))
    if pos != len(body):
        raise ValueError(f"malformed cycle string: {text!r}")
    return from_signed_cycles(n, sign, cycles)


def format_cycles(p):
    """Render as a signed cycle string, e.g. ``-(1,2)(3,4)``."""
    n = p.degree
    seen = set()
    parts = []
    for start in range(1, n + 1):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        t = p[start]
        while t != start:
            cyc.append(t)
            seen.add(t)
            t = p[t]
        parts.append("(" + ",".join(str(x) for x in cyc) + ")")
    sign = "-" if p.sign < 0 else "+"
    return sign + ("".join(parts) if parts else "()")


def parse_array(text, n=None):
    """Parse an array form like ``<2,1,4,3>|-`` or ``<2,1,4,3,6,5>``.

    The bracketed list may give either the n ordinary images with an
    optional ``|+``/``|-`` sign suffix, or the full n+2 array including
    the sign pair.
    """
    s = text.strip().replace(" ", "")
    sign = 1
    explicit_sign = False
    if s.endswith("|+"):
        s = s[:-2]
        explicit_sign = True
    elif s.endswith("|-"):
        sign = -1
        s = s[:-2]
        explicit_sign = True
    if not (s.startswith("<") and s.endswith(">")):
        raise ValueError(f"malformed array string: {text!r}")
    vals = [int(t) for t in s[1:-1].split(",")]
    if n is not None and len(vals) == n + 2:
        imgs = vals
    elif n is not None and len(vals) == n:
        imgs = vals + ([n + 1, n + 2] if sign > 0 else [n + 2, n + 1])
    elif n is None:
        m = len(vals)
        # a list whose last two entries are the two largest values and
        # whose head stays below them already includes the sign pair
        if not explicit_sign and m >= 3 and set(vals[-2:]) == {m - 1, m} and vals[:-2] and max(vals[:-2]) <= m - 2:
            imgs = vals
        else:
            imgs = vals + ([m + 1, m + 2] if sign > 0 else [m + 2, m + 1])
    else:
        raise ValueError(f"expected {n} or {n + 2} images, got {len(vals)}")
    p = SignedPermutation(imgs)
    if sorted(p.images) != list(range(1, len(p.images) + 1)):
        raise ValueError(f"not a permutation: {text!r}")
    m = p.degree
    if p.images[m] not in (m + 1, m + 2):
        raise ValueError(f"sign pair mixed with ordinary points: {text!r}")
    return p


def format_array(p):
    n = p.degree
    body = ",".join(str(x) for x in p.images[:n])
    return f"<{body}>|{'+' if p.sign > 0 else '-'}"
