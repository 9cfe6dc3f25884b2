from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ._simplicial import SimplexRef


class BudgetExceededError(Exception):
    """
    Raised when a computation would exceed one of its configured resource budgets
    (subdivision depth, number of top cells, stage size, etc.).
    """

    def __init__(self, what: str, requested: int, budget: int) -> None:
        super().__init__(f"{what} of {requested} exceeds the budget of {budget}")
        self.what = what
        self.requested = requested
        self.budget = budget


class CategoryAxiomError(ValueError):
    """
    Raised when a composition table is not total on composable pairs, or violates the
    identity or associativity laws.
    """


class IndexOutOfRangeError(IndexError):
    """Raised when a face, horn or simplex index lies outside its valid range."""


class MalformedInputError(ValueError):
    """Raised when serialized input does not match the expected schema."""


class NonMonotoneError(ValueError):
    """Raised when a value list that must be weakly increasing is not."""

    def __init__(self, values: tuple[int, ...] | list[int]) -> None:
        super().__init__(f"values {list(values)} are not weakly increasing")
        self.values = tuple(values)


class NotMonomorphismError(ValueError):
    """
    Raised by :func:`~sdex.pushout` and :func:`~sdex.extend` when the map along which
    to glue or extend is not a monomorphism.
    """


class NotSimplicialError(ValueError):
    """
    Raised when a vertex assignment does not induce a simplicial map (the image of some
    simplex is not a simplex of the target).
    """


class NotVertexDeterminedError(ValueError):
    """
    Raised by :func:`~sdex.face_poset` and :func:`~sdex.sd` when the input is not
    vertex-determined.

    :ivar simplex: the simplex that violates the condition
    """

    def __init__(self, simplex: SimplexRef, reason: str) -> None:
        super().__init__(
            f"simplex {simplex.dim}:{simplex.id} breaks vertex determination: {reason}"
        )
        self.simplex = simplex


class SimplicialIdentityError(Exception):
    """
    Raised (inside an exception group) by :meth:`~sdex.SimplicialSet.check` for each
    violated simplicial identity or malformed face record.
    """


class SizeMismatchError(ValueError):
    """Raised when composing ordinal maps whose sizes do not match."""

    def __init__(self, outer_domain: int, inner_codomain: int) -> None:
        super().__init__(
            f"cannot compose: inner map lands in [{inner_codomain - 1}] but outer map "
            f"starts at [{outer_domain - 1}]"
        )


class TruncationError(Exception):
    """
    Raised when an operation needs simplices above the dimension bound of a truncated
    simplicial set.
    """

    def __init__(self, needed: int, available: int) -> None:
        super().__init__(
            f"dimension {needed} is needed but the simplicial set is only known up to "
            f"dimension {available}"
        )
        self.needed = needed
        self.available = available
