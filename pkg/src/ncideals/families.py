"""
Explicit generator families and reference bases.

Families are generated from their index conditions, never listed by hand:

* ``f'[i,j] = [[xi,xj],xj]`` and ``f''[i,j] = [xi,[xi,xj]]`` for ``i > j``;
* ``g'[i,j,k] = [xi,[xj,xk]]`` and ``g''[i,k,j] = [[xi,xk],xj]`` for ``i > j > k``;
* ``h[i,j,k] = [[xi,xj],[xi,xk]]`` for ``i > j > k``;
* ``t[i,j] = [xi,xj]^2``; ``u'``/``u''`` products of two commutators sharing ``xi``;
* ``v'``/``v''``/``w'``/``w''`` with a middle monomial ``xj^aj ... x(i-1)^a(i-1)``.

The quotient bases (PBW for the free class-2 nilpotent Lie algebra and the
Grassmann basis modulo the T-ideal) are indexed by ascending letters plus
commutator pairs ``(j, k)`` with ``j > k``.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from ncideals.algebra.core import (
    Multidegree,
    Polynomial,
    Word,
    commutator,
    deglex_key,
    multidegree_of,
    x,
)
from ncideals.algebra.endo import Endomorphism
from ncideals.algebra.rewrite import Generator, GeneratorSet
from ncideals.errors import EmptyFamilyError, PreconditionError

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


# ============================================================================
# Generator families
# ============================================================================

def _ids(name: str, *indices: int) -> str:
    return f"{name}[{','.join(str(i) for i in indices)}]"


def _described(name: str, **indices: object) -> str:
    return f"{name}[{','.join(f'{k}={v}' for k, v in indices.items())}]"


def _member(gid: str, family: str, poly: Polynomial, description: str) -> Generator:
    return Generator(gid, poly, family=family, description=description)


def _pairs(n: int) -> Iterator[Pair]:
    for i in range(2, n + 1):
        for j in range(1, i):
            yield i, j


def _triples(n: int) -> Iterator[tuple[int, int, int]]:
    for i, j, k in itertools.combinations(range(n, 0, -1), 3):
        yield i, j, k


def _quadruples(n: int) -> Iterator[tuple[int, int, int, int]]:
    yield from itertools.combinations(range(n, 0, -1), 4)


def _commutators_of_length_three(n: int) -> list[Generator]:
    members: list[Generator] = []
    for i, j in _pairs(n):
        members.append(_member(
            _ids("f'", i, j), "f'", commutator(x(i), x(j), x(j)), _described("f'", i=i, j=j),
        ))
        members.append(_member(
            _ids("f''", i, j), "f''", commutator(x(i), commutator(x(i), x(j))), _described("f''", i=i, j=j),
        ))
    for i, j, k in _triples(n):
        members.append(_member(
            _ids("g'", i, j, k), "g'", commutator(x(i), commutator(x(j), x(k))),
            _described("g'", i=i, j=j, k=k),
        ))
        members.append(_member(
            _ids("g''", i, k, j), "g''", commutator(x(i), x(k), x(j)),
            _described("g''", i=i, k=k, j=j),
        ))
    return members


def gamma3_basis(n: int) -> GeneratorSet:
    """Gröbner basis of the ideal generated by all commutators of length 3.

    Members are ``f'``, ``f''`` (for ``i > j``), ``g'``, ``g''`` and ``h``
    (for ``i > j > k``) in ``x1..xn``, all monic.

    Raises:
        EmptyFamilyError: If ``n < 2``.
    """
    if n < 2:
        raise EmptyFamilyError(f"no commutator generators in {n} variable(s)")
    members = _commutators_of_length_three(n)
    for i, j, k in _triples(n):
        members.append(_member(
            _ids("h", i, j, k), "h",
            commutator(commutator(x(i), x(j)), commutator(x(i), x(k))),
            _described("h", i=i, j=j, k=k),
        ))
    return GeneratorSet(members)


def _exponent_vectors(length: int, budget: int) -> list[tuple[int, ...]]:
    found = [a for a in itertools.product(range(budget + 1), repeat=length) if sum(a) <= budget]
    return sorted(found, key=lambda a: (sum(a), a))


def _middle(j: int, a: Sequence[int]) -> Polynomial:
    word: list[int] = []
    for offset, exponent in enumerate(a):
        word.extend([j + offset] * exponent)
    return Polynomial.from_word(word)


def _exponent_text(a: Sequence[int]) -> str:
    return ",".join(str(e) for e in a)


def tideal_basis(n: int, bound: int) -> GeneratorSet:
    """Gröbner basis of the T-ideal of ``[x1,x2,x3]``, truncated at ``bound``.

    ``h`` is left out: ``u'`` has the same leading word. For ``n < 2`` the
    set is empty.

    Example:
        >>> tideal_basis(2, 10).ids()
        ["f'[2,1]", "f''[2,1]", 't[2,1]']
    """
    if n < 2:
        return GeneratorSet()
    members = [m for m in _commutators_of_length_three(n) if m.degree <= bound]
    if bound < 4:
        return GeneratorSet(members)

    for i, j in _pairs(n):
        c = commutator(x(i), x(j))
        members.append(_member(_ids("t", i, j), "t", c * c, _described("t", i=i, j=j)))
    for i, j, k in _triples(n):
        cij, cik = commutator(x(i), x(j)), commutator(x(i), x(k))
        members.append(_member(_ids("u'", i, j, k), "u'", cij * cik, _described("u'", i=i, j=j, k=k)))
        members.append(_member(_ids("u''", i, j, k), "u''", cik * cij, _described("u''", i=i, j=j, k=k)))

    budget = bound - 4
    for i, j, k in _triples(n):
        for a in _exponent_vectors(i - j, budget):
            m = _middle(j, a)
            tag = f"{i},{j},{k};{_exponent_text(a)}"
            label = f"a=({_exponent_text(a)})"
            members.append(_member(
                f"v'[{tag}]", "v'", commutator(x(j), x(k)) * m * commutator(x(i), x(k)),
                f"v'[i={i},j={j},k={k},{label}]",
            ))
            members.append(_member(
                f"v''[{tag}]", "v''", commutator(x(j), x(k)) * m * commutator(x(i), x(j)),
                f"v''[i={i},j={j},k={k},{label}]",
            ))
    for i, j, k, l in _quadruples(n):
        for a in _exponent_vectors(i - j, budget):
            m = _middle(j, a)
            tag = f"{i},{j},{k},{l};{_exponent_text(a)}"
            label = f"a=({_exponent_text(a)})"
            w1 = (
                commutator(x(j), x(k)) * m * commutator(x(i), x(l))
                + commutator(x(j), x(l)) * m * commutator(x(i), x(k))
            )
            w2 = (
                commutator(x(j), x(l)) * m * commutator(x(i), x(k))
                + commutator(x(k), x(l)) * m * commutator(x(i), x(j))
            )
            members.append(_member(f"w'[{tag}]", "w'", w1, f"w'[i={i},j={j},k={k},l={l},{label}]"))
            members.append(_member(f"w''[{tag}]", "w''", w2, f"w''[i={i},j={j},k={k},l={l},{label}]"))
    return GeneratorSet(members)


def sbasis_gamma3() -> list[Polynomial]:
    """Five polynomials whose order-preserving images give ``gamma3_basis``."""
    x1, x2, x3 = x(1), x(2), x(3)
    return [
        commutator(x2, x1, x1),
        commutator(x2, commutator(x2, x1)),
        commutator(x3, commutator(x2, x1)),
        commutator(x3, x1, x2),
        commutator(commutator(x3, x2), commutator(x3, x1)),
    ]


def sbasis_tideal() -> list[Polynomial]:
    """``[[x1,x2],x3]`` and ``[x1,x2]x5[x3,x4] + [x1,x3]x5[x2,x4]``."""
    x1, x2, x3, x4, x5 = (x(i) for i in range(1, 6))
    return [
        commutator(x1, x2, x3),
        commutator(x1, x2) * x5 * commutator(x3, x4) + commutator(x1, x3) * x5 * commutator(x2, x4),
    ]


def _identity_templates() -> list[Polynomial]:
    x1, x2, x3, x4, x5 = (x(i) for i in range(1, 6))
    c = commutator
    return [
        c(x1, x2) * x3 - x3 * c(x1, x2),
        c(x1, x2) * c(x1, x3),
        c(x1, x2) * x4 * c(x1, x3),
        c(x1, x2) * c(x3, x4) + c(x1, x3) * c(x2, x4),
        c(x1, x2) * x5 * c(x3, x4) + c(x1, x3) * x5 * c(x2, x4),
    ]


def latyshev_identities(n: int) -> list[Polynomial]:
    """Every nonzero instance over ``x1..xn`` of the identities holding modulo the T-ideal.

    Variables of each identity are substituted by variables ``1..n`` with
    repetition; results are monic and deduplicated, in generation order.
    """
    seen: set[Polynomial] = set()
    found: list[Polynomial] = []
    for template in _identity_templates():
        variables = sorted(template.variables())
        for target in itertools.product(range(1, n + 1), repeat=len(variables)):
            image = Endomorphism(tuple((v, (t,)) for v, t in zip(variables, target))).apply(template)
            if not image:
                continue
            image = image.monic()
            if image not in seen:
                seen.add(image)
                found.append(image)
    return found


# ============================================================================
# Quotient bases
# ============================================================================

@dataclass(frozen=True)
class PBWIndex:
    """``x_{i1} ... x_{il} [x_{j1}, x_{k1}] ... [x_{jm}, x_{km}]``.

    Attributes:
        letters: Ascending letters ``i1 <= ... <= il``.
        pairs: Pairs ``(j, k)`` with ``j > k``, lexicographically ascending.
    """
    letters: tuple[int, ...] = ()
    pairs: tuple[Pair, ...] = ()

    def is_admissible(self) -> bool:
        letters_ok = all(a <= b for a, b in zip(self.letters, self.letters[1:]))
        pairs_ok = all(j > k >= 1 for j, k in self.pairs)
        ordered = all(p <= q for p, q in zip(self.pairs, self.pairs[1:]))
        return letters_ok and pairs_ok and ordered and all(i >= 1 for i in self.letters)

    @property
    def degree(self) -> int:
        return len(self.letters) + 2 * len(self.pairs)

    def multidegree(self, n: int) -> Multidegree:
        flat = self.letters + tuple(i for pair in self.pairs for i in pair)
        return multidegree_of(flat, n)

    def polynomial(self) -> Polynomial:
        result = Polynomial.from_word(self.letters)
        for j, k in self.pairs:
            result = result * commutator(x(j), x(k))
        return result

    def __str__(self) -> str:
        text = "".join(f"x{i}" for i in self.letters)
        text += "".join(f"[x{j},x{k}]" for j, k in self.pairs)
        return text or "1"


@dataclass(frozen=True)
class GrassmannIndex(PBWIndex):
    """Basis element modulo the T-ideal: pairs interlace ``k1 < j1 < k2 < j2 < ...``."""

    def is_admissible(self) -> bool:
        chain = [i for j, k in self.pairs for i in (k, j)]
        chain_ok = all(a < b for a, b in zip(chain, chain[1:]))
        return super().is_admissible() and chain_ok


def _split_pairs(md: Multidegree, pairs: Sequence[Pair]) -> Optional[tuple[int, ...]]:
    remaining = list(md)
    for j, k in pairs:
        remaining[j - 1] -= 1
        remaining[k - 1] -= 1
    if min(remaining, default=0) < 0:
        return None
    return tuple(i for i, count in enumerate(remaining, start=1) for _ in range(count))


def pbw_basis(md: Multidegree) -> list[PBWIndex]:
    """All admissible PBW indices of multidegree ``md``."""
    md = tuple(md)
    n = len(md)
    candidates = list(_pairs(n))
    candidates.sort()
    found: list[PBWIndex] = []
    remaining = list(md)
    chosen: list[Pair] = []

    def choose(start: int) -> None:
        found.append(PBWIndex(_split_pairs(md, chosen) or (), tuple(chosen)))
        for position in range(start, len(candidates)):
            j, k = candidates[position]
            if remaining[j - 1] and remaining[k - 1]:
                remaining[j - 1] -= 1
                remaining[k - 1] -= 1
                chosen.append((j, k))
                choose(position)
                chosen.pop()
                remaining[j - 1] += 1
                remaining[k - 1] += 1

    choose(0)
    return found


@lru_cache(maxsize=None)
def pbw_count(md: Multidegree) -> int:
    return len(pbw_basis(tuple(md)))


def grassmann_basis(md: Multidegree) -> list[GrassmannIndex]:
    """All Grassmann basis indices of multidegree ``md``."""
    md = tuple(md)
    support = [i for i, count in enumerate(md, start=1) if count]
    found: list[GrassmannIndex] = []
    for size in range(0, len(support) + 1, 2):
        for chain in itertools.combinations(support, size):
            pairs = tuple((chain[s + 1], chain[s]) for s in range(0, size, 2))
            letters = _split_pairs(md, pairs)
            if letters is not None:
                found.append(GrassmannIndex(letters, pairs))
    return found


@lru_cache(maxsize=None)
def grassmann_count(md: Multidegree) -> int:
    return len(grassmann_basis(tuple(md)))


# ============================================================================
# Normal words and the bijection with the PBW basis
# ============================================================================

def gamma3_normal_predicate(w: Word) -> bool:
    """Whether ``w`` is normal for ``gamma3_basis``.

    (i) a descent ``w[p] > w[p+1]`` needs ``w[p] <= w[p+2]`` and, when
    ``p > 0``, ``w[p-1] < w[p]``; (ii) ``w[p] == w[p+2] > w[p+1], w[p+3]``
    needs ``w[p+1] <= w[p+3]``.
    """
    w = tuple(w)
    size = len(w)
    for p in range(size - 1):
        if w[p] > w[p + 1]:
            if p + 2 < size and w[p] > w[p + 2]:
                return False
            if p > 0 and w[p - 1] >= w[p]:
                return False
    for p in range(size - 3):
        if w[p] == w[p + 2] and w[p] > w[p + 1] and w[p] > w[p + 3] and w[p + 1] > w[p + 3]:
            return False
    return True


def _cut(w: Word) -> PBWIndex:
    letters: list[int] = []
    pairs: list[Pair] = []
    p = 0
    while p < len(w):
        if p + 1 < len(w) and w[p] > w[p + 1]:
            pairs.append((w[p], w[p + 1]))
            p += 2
        else:
            letters.append(w[p])
            p += 1
    return PBWIndex(tuple(letters), tuple(pairs))


def theta(w: Word) -> PBWIndex:
    """Split a normal word at its descents into ascending letters and pairs.

    Raises:
        PreconditionError: If ``w`` is not normal for ``gamma3_basis``.
    """
    w = tuple(w)
    if not gamma3_normal_predicate(w):
        raise PreconditionError(f"{w} is not a normal word for the gamma3 basis")
    return _cut(w)


def psi(u: PBWIndex) -> Word:
    """Interleave letters and pairs: letters below ``j`` come before pair ``(j, k)``.

    Raises:
        PreconditionError: If ``u`` is not admissible.

    Example:
        >>> psi(PBWIndex((1, 2), ((2, 1),)))
        (1, 2, 1, 2)
    """
    if not u.is_admissible():
        raise PreconditionError(f"{u} is not an admissible PBW index")
    out: list[int] = []
    letters = list(u.letters)
    cursor = 0
    for j, k in u.pairs:
        while cursor < len(letters) and letters[cursor] < j:
            out.append(letters[cursor])
            cursor += 1
        out.extend((j, k))
    out.extend(letters[cursor:])
    return tuple(out)


@dataclass(frozen=True)
class CanonicalFactorization:
    """``x1^a1 (x2x1)^b21 x2^a2 (x3x1)^b31 (x3x2)^b32 x3^a3 ...``.

    Attributes:
        a: Exponent of each single letter (zero entries omitted).
        b: Exponent of each pair ``(j, k)`` with ``j > k`` (zero entries omitted).
    """
    a: tuple[tuple[int, int], ...]
    b: tuple[tuple[Pair, int], ...]

    @property
    def top(self) -> int:
        indices = [i for i, _ in self.a] + [j for (j, _), _ in self.b]
        return max(indices, default=0)

    def _blocks(self) -> Iterator[tuple[Word, int]]:
        a, b = dict(self.a), dict(self.b)
        for m in range(1, self.top + 1):
            for p in range(1, m):
                if b.get((m, p)):
                    yield (m, p), b[(m, p)]
            if a.get(m):
                yield (m,), a[m]

    def expand(self) -> Word:
        out: list[int] = []
        for block, exponent in self._blocks():
            out.extend(block * exponent)
        return tuple(out)

    def __str__(self) -> str:
        parts: list[str] = []
        for block, exponent in self._blocks():
            body = "".join(f"x{i}" for i in block)
            if len(block) > 1:
                body = f"({body})"
            parts.append(body if exponent == 1 else f"{body}^{exponent}")
        return "".join(parts) or "1"


def canonical_factorization(w: Word) -> CanonicalFactorization:
    """Exponent data of a normal word.

    Raises:
        PreconditionError: If ``w`` is not normal for ``gamma3_basis``.
    """
    u = theta(w)
    a = sorted(Counter(u.letters).items())
    b = sorted(Counter(u.pairs).items())
    return CanonicalFactorization(tuple(a), tuple(b))


def tideal_normal_predicate(w: Word) -> bool:
    """Whether ``w`` is normal for ``tideal_basis``: gamma3-normal with interlacing pairs."""
    w = tuple(w)
    if not gamma3_normal_predicate(w):
        return False
    chain = [i for j, k in _cut(w).pairs for i in (k, j)]
    return all(a < b for a, b in zip(chain, chain[1:]))


def grassmann_index_of(w: Word) -> GrassmannIndex:
    """``theta`` restricted to words normal for the T-ideal.

    Raises:
        PreconditionError: If ``w`` is not normal for ``tideal_basis``.
    """
    w = tuple(w)
    if not tideal_normal_predicate(w):
        raise PreconditionError(f"{w} is not a normal word for the T-ideal basis")
    u = _cut(w)
    return GrassmannIndex(u.letters, u.pairs)


# ============================================================================
# Lyndon-Shirshov words
# ============================================================================

def is_lyndon_shirshov(w: Word) -> bool:
    """Strictly greater than each of its proper cyclic rotations."""
    w = tuple(w)
    return bool(w) and all(w > w[r:] + w[:r] for r in range(1, len(w)))


@dataclass(frozen=True)
class LyndonShirshovWord:
    word: Word

    def split(self) -> Optional[tuple[Word, Word]]:
        """``(prefix, suffix)`` with the longest proper Lyndon-Shirshov suffix."""
        if len(self.word) < 2:
            return None
        for cut in range(1, len(self.word)):
            suffix = self.word[cut:]
            if is_lyndon_shirshov(suffix):
                return self.word[:cut], suffix
        return None

    def bracketing(self) -> str:
        parts = self.split()
        if parts is None:
            return "".join(f"x{i}" for i in self.word)
        left, right = (LyndonShirshovWord(p).bracketing() for p in parts)
        return f"[{left},{right}]"

    def polynomial(self) -> Polynomial:
        parts = self.split()
        if parts is None:
            return Polynomial.from_word(self.word)
        left, right = (LyndonShirshovWord(p).polynomial() for p in parts)
        return commutator(left, right)

    def __str__(self) -> str:
        return self.bracketing()


def lyndon_shirshov_words(n: int, degree: int) -> list[LyndonShirshovWord]:
    """Lyndon-Shirshov words of degree 3 or 4 in ``x1..xn``, deg-lex ascending.

    Raises:
        PreconditionError: For any other degree.
    """
    if degree not in (3, 4):
        raise PreconditionError("Lyndon-Shirshov words are generated in degree 3 or 4 only")
    words = [w for w in itertools.product(range(1, n + 1), repeat=degree) if is_lyndon_shirshov(w)]
    return [LyndonShirshovWord(w) for w in sorted(words, key=deglex_key)]


__all__ = [
    "CanonicalFactorization",
    "GrassmannIndex",
    "LyndonShirshovWord",
    "PBWIndex",
    "canonical_factorization",
    "gamma3_basis",
    "gamma3_normal_predicate",
    "grassmann_basis",
    "grassmann_count",
    "grassmann_index_of",
    "is_lyndon_shirshov",
    "latyshev_identities",
    "lyndon_shirshov_words",
    "pbw_basis",
    "pbw_count",
    "psi",
    "sbasis_gamma3",
    "sbasis_tideal",
    "tideal_basis",
    "tideal_normal_predicate",
    "theta",
]
