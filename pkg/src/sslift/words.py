"""Arithmetic of simplicial operators.

A monotone map [m] -> [n] between finite ordinals {0,...,m} and {0,...,n}
is stored as the tuple of its m+1 values.  Degeneracy operators appear in
normal form as *words*: a word is the strictly decreasing tuple of indices
i such that the corresponding monotone surjection collapses the pair
(i, i+1).  The empty word is the identity.  Every simplex of a simplicial
set is a unique word applied to a nondegenerate cell, so all face and
degeneracy bookkeeping reduces to composing monotone maps and splitting
them into surjection and injection parts.
"""

from __future__ import annotations


def is_word(word: tuple[int, ...]) -> bool:
    """True if word is a strictly decreasing tuple of nonnegative ints."""
    if not isinstance(word, tuple):
        return False
    if any((not isinstance(i, int)) or i < 0 for i in word):
        return False
    return all(a > b for a, b in zip(word, word[1:]))


def word_to_map(word: tuple[int, ...], degree: int) -> tuple[int, ...]:
    """Surjection [degree] -> [degree - len(word)] collapsing (i, i+1) for i in word."""
    if word and word[0] >= degree:
        raise ValueError(f"word {word} invalid at degree {degree}")
    collapsed = set(word)
    values = [0]
    for i in range(degree):
        values.append(values[-1] if i in collapsed else values[-1] + 1)
    return tuple(values)


def map_to_word(values: tuple[int, ...]) -> tuple[int, ...]:
    """Collapse set of a monotone surjection, as a strictly decreasing word."""
    return tuple(i for i in range(len(values) - 2, -1, -1) if values[i] == values[i + 1])


def is_monotone(values: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def is_surjection(values: tuple[int, ...], codomain: int) -> bool:
    if not values or values[0] != 0 or values[-1] != codomain:
        return False
    return all(b - a in (0, 1) for a, b in zip(values, values[1:]))


def compose(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
    """(outer o inner)(x) = outer[inner[x]]."""
    return tuple(outer[x] for x in inner)


def epi_mono_factor(values: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a monotone map into (injection, surjection) with map = injection o surjection.

    The injection is returned as its value tuple (the sorted image); the
    surjection goes onto [len(image) - 1].
    """
    image = sorted(set(values))
    index = {v: i for i, v in enumerate(image)}
    return tuple(image), tuple(index[v] for v in values)


def delta_values(i: int, n: int) -> tuple[int, ...]:
    """Injection [n-1] -> [n] skipping the value i."""
    if not 0 <= i <= n:
        raise ValueError(f"delta index {i} out of range for [{n}]")
    return tuple(j if j < i else j + 1 for j in range(n))


def sigma_values(i: int, n: int) -> tuple[int, ...]:
    """Surjection [n+1] -> [n] hitting the value i twice."""
    if not 0 <= i <= n:
        raise ValueError(f"sigma index {i} out of range for [{n}]")
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def identity_values(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def op_values(values: tuple[int, ...], codomain: int) -> tuple[int, ...]:
    """The same map through the order-reversing isomorphisms of both ordinals."""
    return tuple(codomain - v for v in reversed(values))


def word_op(word: tuple[int, ...], degree: int) -> tuple[int, ...]:
    """Word of the opposite of the surjection given by word at the given degree."""
    return tuple(sorted((degree - 1 - i for i in word), reverse=True))


def word_string(word: tuple[int, ...]) -> str:
    return ",".join(str(i) for i in word)


def parse_word(text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    try:
        word = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed degeneracy word {text!r}") from exc
    if not is_word(word):
        raise ValueError(f"degeneracy word {text!r} is not strictly decreasing")
    return word
