from __future__ import annotations

from pathlib import Path

from hypothesis import strategies as st

import wsetoid

from wsetoid.entities.setoids import SetoidFamily
from wsetoid.entities.trees import Tree


TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
GOLDEN = TESTS / "golden"
SHIPPED = Path(wsetoid.__file__).parent / "fixtures"


def trees(family: SetoidFamily, max_leaves: int = 8) -> st.SearchStrategy[Tree]:
    """Random well-formed trees of a signature."""

    nullary = [a for a in family.base.carrier if not len(family.fiber(a))]
    others = [a for a in family.base.carrier if len(family.fiber(a))]

    def extend(children: st.SearchStrategy[Tree]) -> st.SearchStrategy[Tree]:
        return st.one_of(
            *(
                st.tuples(*([children] * len(family.fiber(a)))).map(
                    lambda kids, a=a: Tree(a, kids)
                )
                for a in others
            )
        )

    return st.recursive(st.sampled_from([Tree(a) for a in nullary]), extend, max_leaves=max_leaves)
