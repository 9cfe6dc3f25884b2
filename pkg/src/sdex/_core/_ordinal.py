from __future__ import annotations

from collections.abc import Iterable, Iterator
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from ._exceptions import IndexOutOfRangeError, NonMonotoneError, SizeMismatchError


class OrdinalMap(NamedTuple):
    """
    A weakly monotone map ``[d] -> [e]`` between finite ordinals, where ``[d]`` denotes
    ``{0, ..., d}``.

    The map is stored as its value list (``values[j]`` is the image of ``j``) together
    with the number of elements of the codomain. Use :meth:`of` to construct a validated
    instance.
    """

    values: tuple[int, ...]
    codomain_size: int

    @classmethod
    def of(cls, values: Iterable[int], codomain_size: int | None = None) -> OrdinalMap:
        """
        Construct a validated ordinal map.

        :param values: the images of ``0, 1, ...``
        :param codomain_size: number of elements of the codomain (defaults to
            ``max(values) + 1``)
        :raises ~sdex.NonMonotoneError: if the values are not weakly increasing
        :raises ~sdex.IndexOutOfRangeError: if a value lies outside the codomain

        """
        values = tuple(values)
        if not values:
            raise ValueError("an ordinal map needs a non-empty domain")

        if any(a > b for a, b in zip(values, values[1:])):
            raise NonMonotoneError(values)

        if codomain_size is None:
            codomain_size = values[-1] + 1
        elif values[0] < 0 or values[-1] >= codomain_size:
            raise IndexOutOfRangeError(
                f"values {list(values)} do not fit in [{codomain_size - 1}]"
            )

        return cls(values, codomain_size)

    @classmethod
    def identity(cls, size: int) -> OrdinalMap:
        return _identity(size)

    @classmethod
    def coface(cls, n: int, i: int) -> OrdinalMap:
        """
        The injection ``[n-1] -> [n]`` that skips ``i``.

        :raises ~sdex.IndexOutOfRangeError: unless ``0 <= i <= n`` and ``n >= 1``

        """
        if n < 1 or not 0 <= i <= n:
            raise IndexOutOfRangeError(f"no coface δ_{i} into [{n}]")

        return _coface(n, i)

    @classmethod
    def codegeneracy(cls, n: int, i: int) -> OrdinalMap:
        """
        The surjection ``[n+1] -> [n]`` that repeats ``i``.

        :raises ~sdex.IndexOutOfRangeError: unless ``0 <= i <= n``

        """
        if not 0 <= i <= n:
            raise IndexOutOfRangeError(f"no codegeneracy σ_{i} onto [{n}]")

        return _codegeneracy(n, i)

    @classmethod
    def constant(
        cls, value: int, codomain_size: int, domain_size: int = 1
    ) -> OrdinalMap:
        return cls.of((value,) * domain_size, codomain_size)

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __call__(self, j: int) -> int:
        return self.values[j]

    def compose(self, inner: OrdinalMap) -> OrdinalMap:
        """
        Return ``self ∘ inner`` (first ``inner``, then ``self``).

        :raises ~sdex.SizeMismatchError: if ``inner`` does not land in the domain of
            this map

        """
        if inner.codomain_size != len(self.values):
            raise SizeMismatchError(len(self.values), inner.codomain_size)

        values = self.values
        return OrdinalMap(tuple([values[v] for v in inner.values]), self.codomain_size)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    @property
    def is_identity(self) -> bool:
        return self.codomain_size == len(self.values) and self.values == tuple(
            range(self.codomain_size)
        )

    @property
    def is_injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_surjective(self) -> bool:
        return (
            self.values[0] == 0
            and self.values[-1] == self.codomain_size - 1
            and all(b - a <= 1 for a, b in zip(self.values, self.values[1:]))
        )

    def factor(self) -> tuple[OrdinalMap, OrdinalMap]:
        """
        Return the unique factorization ``self = mono ∘ epi`` into a surjection followed
        by an injection, as the pair ``(epi, mono)``.
        """
        return _factor(self)


def compose_ordinal(outer: OrdinalMap, inner: OrdinalMap) -> OrdinalMap:
    """
    Compose two ordinal maps: ``outer ∘ inner``.

    :raises ~sdex.SizeMismatchError: if the maps are not composable

    """
    return outer.compose(inner)


def epi_mono_factor(f: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """Return the pair ``(epi, mono)`` with ``f = mono ∘ epi``."""
    return f.factor()


def monotone_maps(domain_size: int, codomain_size: int) -> Iterator[OrdinalMap]:
    """Yield every weakly monotone map between two ordinals, in lexicographic order."""
    for chosen in _multisets(domain_size, codomain_size):
        yield OrdinalMap(chosen, codomain_size)


def surjections(domain_size: int, codomain_size: int) -> tuple[OrdinalMap, ...]:
    """
    Return every monotone surjection ``[domain_size-1] -> [codomain_size-1]`` in
    lexicographic order of value lists.
    """
    return _surjections(domain_size, codomain_size)


def _multisets(length: int, size: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return

    def extend(prefix: tuple[int, ...], low: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return

        for value in range(low, size):
            yield from extend(prefix + (value,), value)

    yield from extend((), 0)


@lru_cache(maxsize=None)
def _identity(size: int) -> OrdinalMap:
    return OrdinalMap(tuple(range(size)), size)


@lru_cache(maxsize=None)
def _coface(n: int, i: int) -> OrdinalMap:
    return OrdinalMap(tuple(j if j < i else j + 1 for j in range(n)), n + 1)


@lru_cache(maxsize=None)
def _codegeneracy(n: int, i: int) -> OrdinalMap:
    return OrdinalMap(tuple(j if j <= i else j - 1 for j in range(n + 2)), n + 1)


@lru_cache(maxsize=None)
def _surjections(domain_size: int, codomain_size: int) -> tuple[OrdinalMap, ...]:
    if codomain_size > domain_size or codomain_size < 1:
        return ()

    # a surjection is fixed by the positions where its value steps up by one
    found = []
    for steps in combinations(range(1, domain_size), codomain_size - 1):
        values = []
        current = 0
        step_set = set(steps)
        for j in range(domain_size):
            if j in step_set:
                current += 1

            values.append(current)

        found.append(OrdinalMap(tuple(values), codomain_size))

    found.sort()
    return tuple(found)


@lru_cache(maxsize=65536)
def _factor(f: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    image = sorted(set(f.values))
    position = {value: index for index, value in enumerate(image)}
    epi = OrdinalMap(tuple(position[v] for v in f.values), len(image))
    mono = OrdinalMap(tuple(image), f.codomain_size)
    return epi, mono
