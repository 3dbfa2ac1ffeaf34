"""Itemset lifecycle state and the dashed/solid bookkeeping collections."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bitops import cardinality


class Shape(enum.Enum):
    """Lifecycle state of a counted itemset.

    Dashed itemsets are still being counted, solid ones are done; circles are
    (suspected) infrequent, boxes (suspected) frequent. NIL marks an entry
    scheduled for removal from its vector.
    """

    DASHED_CIRCLE = "dashed-circle"
    DASHED_BOX = "dashed-box"
    SOLID_CIRCLE = "solid-circle"
    SOLID_BOX = "solid-box"
    NIL = "nil"

    @property
    def is_dashed(self) -> bool:
        return self in (Shape.DASHED_CIRCLE, Shape.DASHED_BOX)

    @property
    def is_solid(self) -> bool:
        return self in (Shape.SOLID_CIRCLE, Shape.SOLID_BOX)

    @property
    def is_box(self) -> bool:
        return self in (Shape.DASHED_BOX, Shape.SOLID_BOX)


#: Legal lifecycle edges. ``None`` is the birth of a candidate; circles may be
#: promoted once their count clears the threshold, dashed entries finalize to
#: the matching solid state after one full pass, and only dashed entries may
#: be discarded (NIL).
LEGAL_TRANSITIONS = frozenset(
    {
        (None, Shape.DASHED_CIRCLE),
        (Shape.DASHED_CIRCLE, Shape.DASHED_BOX),
        (Shape.DASHED_CIRCLE, Shape.SOLID_CIRCLE),
        (Shape.DASHED_BOX, Shape.SOLID_BOX),
        (Shape.DASHED_CIRCLE, Shape.NIL),
        (Shape.DASHED_BOX, Shape.NIL),
    }
)


class TransitionAudit:
    """Recorder for every shape transition of an instrumented run."""

    def __init__(self) -> None:
        self.transitions: list[tuple[int, Shape | None, Shape]] = []

    def record(self, mask: int, old: Shape | None, new: Shape) -> None:
        self.transitions.append((mask, old, new))

    def illegal(self) -> list[tuple[int, Shape | None, Shape]]:
        """Transitions outside the lifecycle edge set (empty on a sound run)."""
        return [t for t in self.transitions if (t[1], t[2]) not in LEGAL_TRANSITIONS]


@dataclass(slots=True, eq=False)
class CountedItemset:
    """One itemset under observation.

    ``intervals_counted`` says how many stop chunks this itemset has been
    counted over; ``support`` is exact over exactly those chunks and never
    decreases.
    """

    mask: int
    size: int
    intervals_counted: int = 0
    support: int = 0
    shape: Shape = Shape.DASHED_CIRCLE

    @classmethod
    def fresh(cls, mask: int) -> "CountedItemset":
        return cls(mask=mask, size=cardinality(mask))


class ItemsetCatalog:
    """The dashed and solid vectors plus a dedup index of every mask seen.

    A mask enters ``known`` once, at creation, and stays there even after the
    record leaves the dashed vector; that is what prevents a candidate from
    being generated twice across stops.
    """

    def __init__(self) -> None:
        self.dashed: list[CountedItemset] = []
        self.solid: list[CountedItemset] = []
        self.known: dict[int, CountedItemset] = {}

    def transition(
        self,
        item: CountedItemset,
        new_shape: Shape,
        audit: TransitionAudit | None = None,
    ) -> None:
        if audit is not None:
            audit.record(item.mask, item.shape, new_shape)
        item.shape = new_shape

    def add_candidate(
        self, mask: int, audit: TransitionAudit | None = None
    ) -> CountedItemset:
        """Insert a fresh dashed-circle candidate; the mask must be unseen."""
        item = CountedItemset.fresh(mask)
        if audit is not None:
            audit.record(mask, None, Shape.DASHED_CIRCLE)
        self.dashed.append(item)
        self.known[mask] = item
        return item

    def register(self, item: CountedItemset) -> None:
        """Track a record in the dedup index without placing it in a vector."""
        self.known[item.mask] = item

    def shape_of(self, mask: int) -> Shape | None:
        item = self.known.get(mask)
        return None if item is None else item.shape

    def compact_dashed(self) -> None:
        """Drop NIL and finalized entries, preserving the survivors' order."""
        self.dashed = [it for it in self.dashed if it.shape.is_dashed]

    def box_masks(self) -> list[int]:
        """Masks of every box-shaped itemset, dashed or solid."""
        return [it.mask for it in self.known.values() if it.shape.is_box]
