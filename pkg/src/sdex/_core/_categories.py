from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import NamedTuple

from ._exceptions import CategoryAxiomError, IndexOutOfRangeError
from ._ordinal import OrdinalMap
from ._simplicial import FaceRecord, SimplexRef, SimplicialSet, SimplicialSetBuilder
from ._subdivision import FacePoset, face_poset, subdivided_horn, subdivided_simplex

logger = logging.getLogger(__name__)


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


@dataclass(eq=False)
class FiniteCategory:
    """
    A finite category given by its objects, arrows and composition table.

    ``composition[(g, f)]`` is the index of ``g ∘ f`` (first ``f``, then ``g``) for
    every composable pair of arrow indices. The table is validated on construction.

    :raises ~sdex.CategoryAxiomError: if the table is not total on composable pairs or
        breaks the identity or associativity laws
    """

    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    identities: tuple[int, ...]
    composition: dict[tuple[int, int], int]
    name: str = ""

    def __post_init__(self) -> None:
        self._validate()

    def _validate(self) -> None:
        if len(self.identities) != len(self.objects):
            raise CategoryAxiomError("every object needs exactly one identity arrow")

        for arrow in self.arrows:
            if not (
                0 <= arrow.source < len(self.objects)
                and 0 <= arrow.target < len(self.objects)
            ):
                raise CategoryAxiomError(f"arrow {arrow.name} has an unknown endpoint")

        for obj, ident in enumerate(self.identities):
            arrow = self.arrows[ident]
            if arrow.source != obj or arrow.target != obj:
                raise CategoryAxiomError(
                    f"identity {arrow.name} is not an endomorphism of {obj}"
                )

        for g, f in self.composable_pairs():
            name = f"{self.arrows[g].name} ∘ {self.arrows[f].name}"
            composite = self.composition.get((g, f))
            if composite is None:
                raise CategoryAxiomError(f"{name} is undefined")

            if (
                self.arrows[composite].source != self.arrows[f].source
                or self.arrows[composite].target != self.arrows[g].target
            ):
                raise CategoryAxiomError(f"{name} has the wrong type")

        for index, arrow in enumerate(self.arrows):
            if (
                self.composition[(index, self.identities[arrow.source])] != index
                or self.composition[(self.identities[arrow.target], index)] != index
            ):
                raise CategoryAxiomError(f"identity law fails for {arrow.name}")

        for g, f in self.composable_pairs():
            for h in self.arrows_from(self.arrows[g].target):
                left = self.composition[(h, self.composition[(g, f)])]
                right = self.composition[(self.composition[(h, g)], f)]
                if left != right:
                    names = ", ".join(self.arrows[a].name for a in (h, g, f))
                    raise CategoryAxiomError(f"associativity fails for {names}")

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        """Yield every pair ``(g, f)`` with ``target(f) == source(g)``."""
        for g, second in enumerate(self.arrows):
            for f in self.arrows_into(second.source):
                yield g, f

    @cached_property
    def _hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        hom: dict[tuple[int, int], list[int]] = {}
        for index, arrow in enumerate(self.arrows):
            hom.setdefault((arrow.source, arrow.target), []).append(index)

        return {key: tuple(value) for key, value in hom.items()}

    def hom(self, source: int, target: int) -> tuple[int, ...]:
        return self._hom.get((source, target), ())

    def arrows_from(self, obj: int) -> list[int]:
        return [i for i, arrow in enumerate(self.arrows) if arrow.source == obj]

    def arrows_into(self, obj: int) -> list[int]:
        return [i for i, arrow in enumerate(self.arrows) if arrow.target == obj]

    def compose(self, g: int, f: int) -> int:
        return self.composition[(g, f)]

    def is_identity(self, arrow: int) -> bool:
        return self.identities[self.arrows[arrow].source] == arrow

    def inverse(self, arrow: int) -> int | None:
        source, target = self.arrows[arrow].source, self.arrows[arrow].target
        for candidate in self.hom(target, source):
            if (
                self.composition[(candidate, arrow)] == self.identities[source]
                and self.composition[(arrow, candidate)] == self.identities[target]
            ):
                return candidate

        return None

    @cached_property
    def isomorphisms(self) -> frozenset[int]:
        return frozenset(
            arrow
            for arrow in range(len(self.arrows))
            if self.inverse(arrow) is not None
        )

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        """The first object of each isomorphism class of objects, in order."""
        result: list[int] = []
        for obj in range(len(self.objects)):
            if not any(
                arrow in self.isomorphisms
                for other in result
                for arrow in self.hom(other, obj)
            ):
                result.append(obj)

        return tuple(result)

    @classmethod
    def from_monoid(
        cls,
        elements: Sequence[str],
        table: Sequence[Sequence[int]],
        identity: int | None = None,
        name: str = "",
    ) -> FiniteCategory:
        """
        Build the one-object category of a finite monoid.

        :param table: ``table[a][b]`` is the index of ``a · b`` (first ``b``, then
            ``a``)
        :param identity: index of the unit (located automatically when omitted)

        """
        size = len(elements)
        if len(table) != size or any(len(row) != size for row in table):
            raise CategoryAxiomError("the multiplication table must be square")

        if any(not 0 <= value < size for row in table for value in row):
            raise CategoryAxiomError("the multiplication table has unknown entries")

        if identity is None:
            for candidate in range(size):
                if all(
                    table[candidate][x] == x and table[x][candidate] == x
                    for x in range(size)
                ):
                    identity = candidate
                    break
            else:
                raise CategoryAxiomError("the monoid has no unit")

        arrows = tuple(Arrow(str(element), 0, 0) for element in elements)
        composition = {(a, b): table[a][b] for a in range(size) for b in range(size)}
        return cls(("*",), arrows, (identity,), composition, name)

    @classmethod
    def from_poset(
        cls,
        elements: Sequence[str],
        leq: Mapping[tuple[int, int], bool] | Sequence[Sequence[bool]],
        name: str = "",
    ) -> FiniteCategory:
        """
        Build the category of a finite poset, with one arrow ``x -> y`` whenever
        ``x <= y``.

        :param leq: either a boolean matrix or a mapping listing the strict relations

        """
        size = len(elements)

        def related(x: int, y: int) -> bool:
            if x == y:
                return True

            if isinstance(leq, Mapping):
                return bool(leq.get((x, y), False))

            return bool(leq[x][y])

        arrows: list[Arrow] = []
        lookup: dict[tuple[int, int], int] = {}
        for x in range(size):
            for y in range(size):
                if related(x, y):
                    if x != y and related(y, x):
                        raise CategoryAxiomError(
                            "the order relation is not antisymmetric"
                        )

                    lookup[(x, y)] = len(arrows)
                    label = elements[x] if x == y else f"{elements[x]}<{elements[y]}"
                    arrows.append(Arrow(label, x, y))

        composition = {}
        for (y, z), g in lookup.items():
            for (x, middle), f in lookup.items():
                if middle == y:
                    if (x, z) not in lookup:
                        raise CategoryAxiomError("the order relation is not transitive")

                    composition[(g, f)] = lookup[(x, z)]

        identities = tuple(lookup[(x, x)] for x in range(size))
        return cls(tuple(elements), tuple(arrows), identities, composition, name)


def cyclic_group(order: int) -> FiniteCategory:
    elements = ["1"] + [f"g{k}" for k in range(1, order)]
    table = [[(a + b) % order for b in range(order)] for a in range(order)]
    return FiniteCategory.from_monoid(elements, table, 0, name=f"Z{order}")


def linear_order(m: int) -> FiniteCategory:
    """The ordinal ``[m] = {0 < 1 < ... < m}`` as a category."""
    return FiniteCategory.from_poset(
        [str(x) for x in range(m + 1)],
        [[x <= y for y in range(m + 1)] for x in range(m + 1)],
        name=f"[{m}]",
    )


def transformation_monoid(size: int) -> FiniteCategory:
    """All self-maps of ``{0, ..., size - 1}`` under composition."""
    maps = list(product(range(size), repeat=size))
    index = {m: k for k, m in enumerate(maps)}
    table = [[index[tuple(a[b[x]] for x in range(size))] for b in maps] for a in maps]
    names = ["".join(map(str, m)) for m in maps]
    return FiniteCategory.from_monoid(names, table, name=f"T{size}")


def _parallel_pair() -> FiniteCategory:
    arrows = (Arrow("a", 0, 0), Arrow("b", 1, 1), Arrow("u", 0, 1), Arrow("v", 0, 1))
    composition = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (3, 0): 3, (1, 2): 2, (1, 3): 3}
    return FiniteCategory(("a", "b"), arrows, (0, 1), composition, name="parallel")


def curated_family() -> dict[str, FiniteCategory]:
    """
    Return the small categories used to cross-check the simplicial and categorical
    sides against each other, keyed by name.

    They cover groupoids, categories with left fractions that are not groupoids, and
    categories without left fractions.
    """
    categories = [
        FiniteCategory.from_monoid(["1"], [[0]], name="trivial"),
        cyclic_group(2),
        cyclic_group(3),
        FiniteCategory.from_monoid(["1", "e"], [[0, 1], [1, 1]], name="idempotent"),
        FiniteCategory.from_monoid(
            ["1", "a", "0"], [[0, 1, 2], [1, 2, 2], [2, 2, 2]], name="nilpotent"
        ),
        FiniteCategory.from_monoid(
            ["1", "a", "b"], [[0, 1, 2], [1, 1, 2], [2, 1, 2]], name="right-zero"
        ),
        transformation_monoid(2),
        FiniteCategory.from_poset(["a", "b", "c"], {(0, 1): True, (0, 2): True}, "V"),
        _parallel_pair(),
        linear_order(1),
        linear_order(2),
    ]
    return {category.name: category for category in categories}


def nerve(category: FiniteCategory, bound: int) -> SimplicialSet:
    """
    Return the nerve of a finite category, truncated at dimension ``bound``.

    The non-degenerate ``m``-simplices are the strings of ``m`` composable
    non-identity arrows. A face that composes two arrows into an identity is
    degenerate and is recorded in normal form. The result is only marked truncated if
    the nerve has non-degenerate simplices above ``bound``.
    """
    if bound < 0:
        raise ValueError("the truncation bound must be non-negative")

    builder = SimplicialSetBuilder()
    vertices = [builder.add_vertex(name) for name in category.objects]
    proper = [a for a in range(len(category.arrows)) if not category.is_identity(a)]
    outgoing: dict[int, list[int]] = {}
    for arrow in proper:
        outgoing.setdefault(category.arrows[arrow].source, []).append(arrow)

    strings: dict[tuple[int, ...], SimplexRef] = {}

    def normal_form(chain: tuple[int, ...], start: int) -> FaceRecord:
        values = [0]
        kept = []
        for arrow in chain:
            if category.is_identity(arrow):
                values.append(values[-1])
            else:
                values.append(values[-1] + 1)
                kept.append(arrow)

        target = strings[tuple(kept)] if kept else vertices[start]
        return FaceRecord(OrdinalMap(tuple(values), len(kept) + 1), target)

    level = [(arrow,) for arrow in proper]
    m = 1
    while level and m <= bound:
        following = []
        for chain in level:
            start = category.arrows[chain[0]].source
            faces = [normal_form(chain[1:], category.arrows[chain[0]].target)]
            for i in range(1, m):
                inner = category.compose(chain[i], chain[i - 1])
                faces.append(
                    normal_form(chain[: i - 1] + (inner,) + chain[i + 1 :], start)
                )

            faces.append(normal_form(chain[:-1], start))
            label = " ".join(category.arrows[arrow].name for arrow in chain)
            strings[chain] = builder.add_simplex(m, faces, label)
            for arrow in outgoing.get(category.arrows[chain[-1]].target, ()):
                following.append(chain + (arrow,))

        level = following
        m += 1

    if level:
        return builder.build(dim_bound=bound, truncated=True)

    return builder.build()


def is_groupoid(category: FiniteCategory) -> tuple[bool, str | None]:
    """
    Decide whether every arrow is invertible.

    :return: ``(holds, witness)`` where ``witness`` names a non-invertible arrow

    """
    for arrow in range(len(category.arrows)):
        if arrow not in category.isomorphisms:
            return False, category.arrows[arrow].name

    return True, None


class FractionsVerdict(NamedTuple):
    """
    Outcome of :func:`left_fractions_check`.

    :ivar holds: whether both conditions hold
    :ivar condition: ``"span"`` or ``"equalizer"``, naming the failing condition
    :ivar witness: the names of the arrows witnessing the failure
    """

    holds: bool
    condition: str | None = None
    witness: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def left_fractions_check(category: FiniteCategory) -> FractionsVerdict:
    """
    Decide whether the category admits a left calculus of fractions:

    * every span ``b <-f- a -g-> c`` completes to a square with ``u ∘ f = v ∘ g``
    * whenever ``u ∘ w = v ∘ w``, some ``z`` satisfies ``z ∘ u = z ∘ v``

    Both conditions are checked exhaustively.
    """
    arrows = category.arrows
    count = len(arrows)
    for f in range(count):
        for g in range(count):
            if arrows[f].source != arrows[g].source:
                continue

            if not any(
                category.compose(u, f) == category.compose(v, g)
                for u in category.arrows_from(arrows[f].target)
                for v in category.arrows_from(arrows[g].target)
                if arrows[u].target == arrows[v].target
            ):
                witness = (arrows[f].name, arrows[g].name)
                return FractionsVerdict(False, "span", witness)

    for u in range(count):
        for v in category.hom(arrows[u].source, arrows[u].target):
            for w in category.arrows_into(arrows[u].source):
                if category.compose(u, w) != category.compose(v, w):
                    continue

                if not any(
                    category.compose(z, u) == category.compose(z, v)
                    for z in category.arrows_from(arrows[u].target)
                ):
                    witness = (arrows[u].name, arrows[v].name, arrows[w].name)
                    return FractionsVerdict(False, "equalizer", witness)

    return FractionsVerdict(True)


@dataclass(frozen=True)
class FinitePoset:
    """
    A finite poset on ``0, ..., size - 1`` whose numbering is a linear extension.

    :ivar below: the strict down-set of each element
    :ivar covers: the elements covered by each element
    """

    size: int
    below: tuple[frozenset[int], ...]
    covers: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_face_poset(cls, poset: FacePoset) -> FinitePoset:
        return cls(
            len(poset),
            tuple(down - {x} for x, down in enumerate(poset.below)),
            poset.covers,
            tuple(f"{ref.dim}:{ref.id}" for ref in poset.elements),
        )

    def leq(self, x: int, y: int) -> bool:
        return x == y or x in self.below[y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)


class PosetInclusion(NamedTuple):
    """An order embedding, given by the image of each element."""

    source: FinitePoset
    target: FinitePoset
    images: tuple[int, ...]


def cat_simplex(k: int) -> FinitePoset:
    """Return the linear poset ``[k]``, which is ``cat(Δ_k)``."""
    if k < 0:
        raise IndexOutOfRangeError(f"there is no simplex of dimension {k}")

    return FinitePoset(
        k + 1,
        tuple(frozenset(range(x)) for x in range(k + 1)),
        tuple((x - 1,) if x else () for x in range(k + 1)),
        tuple(str(x) for x in range(k + 1)),
    )


def cat_sd_simplex(n: int, k: int) -> FinitePoset:
    """Return ``cat(Sd^n Δ_k)``, the face poset of ``Sd^(n-1) Δ_k`` (``n >= 1``)."""
    if n < 1:
        raise ValueError("cat of a subdivided simplex needs n >= 1")

    return FinitePoset.from_face_poset(face_poset(subdivided_simplex(k, n - 1)))


def cat_sd_horn(n: int, k: int, i: int) -> PosetInclusion:
    """Return the inclusion ``cat(Sd^n Λ^i_k) -> cat(Sd^n Δ_k)`` (``n >= 1``)."""
    if n < 1:
        raise ValueError("cat of a subdivided horn needs n >= 1")

    source, target, inclusion = subdivided_horn(k, i, n - 1)
    inner = face_poset(source)
    outer = face_poset(target)
    images = tuple(outer.index[inclusion.images[ref].target] for ref in inner.elements)
    return PosetInclusion(
        FinitePoset.from_face_poset(inner), FinitePoset.from_face_poset(outer), images
    )


@dataclass(eq=False)
class PosetFunctor:
    """
    A functor from a finite poset into a finite category.

    :ivar objects: the object assigned to each element
    :ivar arrows: the arrow assigned to each strict relation ``x < y``
    """

    objects: tuple[int, ...]
    arrows: dict[tuple[int, int], int]

    def describe(self, category: FiniteCategory, poset: FinitePoset) -> str:
        """List the images of the elements and of the cover relations."""
        parts = [
            f"{poset.label(x)}->{category.objects[obj]}"
            for x, obj in enumerate(self.objects)
        ]
        for y in range(poset.size):
            for x in poset.covers[y]:
                arrow = category.arrows[self.arrows[(x, y)]]
                parts.append(f"{poset.label(x)}<{poset.label(y)}->{arrow.name}")

        return ", ".join(parts)


def iter_functors(
    poset: FinitePoset,
    category: FiniteCategory,
    fixed: PosetFunctor | None = None,
    along: Sequence[int] = (),
    gauge: bool = False,
) -> Iterator[PosetFunctor]:
    """
    Enumerate the functors ``poset -> category`` by backtracking over the elements in
    order, choosing arrows for cover relations and deriving the rest by composition.

    :param fixed: a functor on a down-closed subposet, prescribing the values there
    :param along: the element of ``poset`` behind each element of ``fixed``'s domain
    :param gauge: only yield functors in a normal form that meets every natural
        isomorphism class: minimal elements go to the first object of their
        isomorphism class, and the first cover relation of each element is sent to an
        identity whenever it is sent to an isomorphism

    """
    objects: list[int] = [-1] * poset.size
    arrows: dict[tuple[int, int], int] = {}
    prescribed: set[int] = set()
    if fixed is not None:
        for x, image in enumerate(along):
            objects[image] = fixed.objects[x]
            prescribed.add(image)

        for (x, y), arrow in fixed.arrows.items():
            arrows[(along[x], along[y])] = arrow

    free = [y for y in range(poset.size) if y not in prescribed]
    roots: Sequence[int] = (
        category.representatives if gauge else range(len(category.objects))
    )

    def derive(y: int) -> dict[tuple[int, int], int] | None:
        derived = {}
        covers = poset.covers[y]
        for x in sorted(poset.below[y]):
            if x in covers:
                continue

            value = None
            for w in covers:
                if x in poset.below[w]:
                    composite = category.compose(arrows[(w, y)], arrows[(x, w)])
                    if value is None:
                        value = composite
                    elif value != composite:
                        return None

            assert value is not None
            derived[(x, y)] = value

        return derived

    def assign_covers(position: int, y: int, index: int) -> Iterator[PosetFunctor]:
        covers = poset.covers[y]
        if index == len(covers):
            derived = derive(y)
            if derived is not None:
                arrows.update(derived)
                yield from assign(position + 1)
                for key in derived:
                    del arrows[key]

            return

        x = covers[index]
        for arrow in category.hom(objects[x], objects[y]):
            if (
                gauge
                and index == 0
                and arrow in category.isomorphisms
                and not category.is_identity(arrow)
            ):
                continue

            arrows[(x, y)] = arrow
            yield from assign_covers(position, y, index + 1)
            del arrows[(x, y)]

    def assign(position: int) -> Iterator[PosetFunctor]:
        if position == len(free):
            yield PosetFunctor(tuple(objects), dict(arrows))
            return

        y = free[position]
        choices = range(len(category.objects)) if poset.covers[y] else roots
        for obj in choices:
            objects[y] = obj
            yield from assign_covers(position, y, 0)

        objects[y] = -1

    yield from assign(0)


def functor_extension(
    functor: PosetFunctor, inclusion: PosetInclusion, category: FiniteCategory
) -> PosetFunctor | None:
    """Return an extension of ``functor`` along ``inclusion``, or ``None``."""
    extensions = iter_functors(inclusion.target, category, functor, inclusion.images)
    return next(extensions, None)


class InjectivityVerdict(NamedTuple):
    """
    Outcome of :func:`poset_injectivity_check`.

    :ivar horn: the ``(k, i)`` of the first horn with a functor that does not extend
    :ivar functor: that functor
    """

    holds: bool
    horn: tuple[int, int] | None = None
    functor: PosetFunctor | None = None

    def __bool__(self) -> bool:
        return self.holds


def _top(poset: FinitePoset) -> int | None:
    for x in range(poset.size):
        if len(poset.below[x]) == poset.size - 1:
            return x

    return None


def _join_retraction(poset: FinitePoset) -> tuple[int, tuple[int, ...]] | None:
    """
    Find an element ``a`` such that every ``x`` has a join ``x ∨ a``, preferring the
    smallest up-set of ``a``.

    :return: ``a`` and the monotone retraction ``x -> x ∨ a`` onto its up-set, or
        ``None`` if no element qualifies

    """
    best: tuple[int, tuple[int, ...]] | None = None
    for a in range(poset.size):
        joins: list[int] = []
        for x in range(poset.size):
            bounds = [
                y for y in range(poset.size) if poset.leq(x, y) and poset.leq(a, y)
            ]
            least = [y for y in bounds if all(poset.leq(y, z) for z in bounds)]
            if not least:
                break

            joins.append(least[0])
        else:
            if best is None or len(set(joins)) < len(set(best[1])):
                best = (a, tuple(joins))

    return best


def _restrict(poset: FinitePoset, elements: Sequence[int]) -> FinitePoset:
    # covers survive restriction to an up-set
    index = {x: position for position, x in enumerate(elements)}
    return FinitePoset(
        len(elements),
        tuple(
            frozenset(index[x] for x in poset.below[y] if x in index) for y in elements
        ),
        tuple(tuple(index[x] for x in poset.covers[y] if x in index) for y in elements),
        tuple(poset.label(y) for y in elements),
    )


def _cocone(
    functor: PosetFunctor, poset: FinitePoset, category: FiniteCategory
) -> dict[int, int] | None:
    """
    Search a cocone under ``functor``.

    :return: the legs from the maximal elements to a common object, or ``None``

    """
    maximal = [
        m
        for m in range(poset.size)
        if not any(m in poset.below[y] for y in range(poset.size))
    ]
    shared = {
        (m, other): [
            x for x in range(poset.size) if poset.leq(x, m) and poset.leq(x, other)
        ]
        for m in maximal
        for other in maximal
    }

    def image(x: int, m: int) -> int:
        if x == m:
            return category.identities[functor.objects[m]]

        return functor.arrows[(x, m)]

    legs: dict[int, int] = {}

    def place(position: int, apex: int) -> bool:
        if position == len(maximal):
            return True

        m = maximal[position]
        for leg in category.hom(functor.objects[m], apex):
            if all(
                category.compose(leg, image(x, m))
                == category.compose(legs[other], image(x, other))
                for other in maximal[:position]
                for x in shared[(m, other)]
            ):
                legs[m] = leg
                if place(position + 1, apex):
                    return True

                del legs[m]

        return False

    for apex in range(len(category.objects)):
        if place(0, apex):
            return legs

    return None


def _pull_back(
    functor: PosetFunctor,
    poset: FinitePoset,
    retraction: Sequence[int],
    index: Mapping[int, int],
    category: FiniteCategory,
) -> PosetFunctor:
    objects = tuple(functor.objects[index[retraction[x]]] for x in range(poset.size))
    arrows: dict[tuple[int, int], int] = {}
    for y in range(poset.size):
        for x in poset.below[y]:
            low, high = retraction[x], retraction[y]
            arrows[(x, y)] = (
                category.identities[objects[x]]
                if low == high
                else functor.arrows[(index[low], index[high])]
            )

    return PosetFunctor(objects, arrows)


def _stuck_functor(
    inclusion: PosetInclusion, category: FiniteCategory, exhaustive: bool
) -> PosetFunctor | None:
    source = inclusion.source
    reduction = None
    if not exhaustive and _top(inclusion.target) is not None:
        reduction = _join_retraction(source)

    if reduction is None:
        for functor in iter_functors(source, category, gauge=True):
            if functor_extension(functor, inclusion, category) is None:
                return functor

        return None

    # With a top element in the target, a functor extends exactly when it has a
    # cocone, and cocones are decided on the up-set of the apex.
    apex, retraction = reduction
    elements = sorted(set(retraction))
    index = {x: position for position, x in enumerate(elements)}
    star = _restrict(source, elements)
    logger.debug(
        "deciding extensions on the %d elements above %s",
        star.size,
        source.label(apex),
    )
    for functor in iter_functors(star, category, gauge=True):
        if _cocone(functor, star, category) is None:
            return _pull_back(functor, source, retraction, index, category)

    return None


def poset_injectivity_check(
    category: FiniteCategory, n: int, k_max: int, *, exhaustive: bool = False
) -> InjectivityVerdict:
    """
    Decide whether every functor ``cat(Sd^n Λ^i_k) -> C`` extends along the inclusion
    into ``cat(Sd^n Δ_k)``, for all horns with ``1 <= k <= k_max``.

    Functors are enumerated up to natural isomorphism, which does not change whether
    they extend. When ``cat(Sd^n Δ_k)`` has a top element (``n = 1``), a functor
    extends exactly when it admits a cocone. The horn poset retracts onto the up-set of
    its apex by ``x -> x ∨ apex``, every functor on that up-set extends along the
    retraction, and cocones restrict and extend across it, so only functors on the
    up-set are enumerated. The reported functor is the pullback of a functor on the
    up-set that has no cocone.

    :param exhaustive: enumerate every functor on the horn poset and search an
        extension for each, even when the reduction applies

    """
    for k in range(1, k_max + 1):
        for i in range(k + 1):
            inclusion = cat_sd_horn(n, k, i)
            functor = _stuck_functor(inclusion, category, exhaustive)
            if functor is not None:
                logger.info(
                    "%s: a functor on cat(Sd^%d Λ^%d_%d) does not extend",
                    category.name,
                    n,
                    i,
                    k,
                )
                return InjectivityVerdict(False, (k, i), functor)

    return InjectivityVerdict(True)
