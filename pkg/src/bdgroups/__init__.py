"""Conjugacy classes of the groups G(p) and bipartite divisor graphs of class sizes."""

from .bdg import (
    BipartiteDivisorGraph,
    GraphShape,
    TableGroup,
    bdg_of_group,
    build_bdg,
    class_sizes_of_table_group,
    classify_shape,
    graph_invariants,
    load_table,
)
from .class_analysis import ClassTable, ConjugacyClass, class_table, conjugacy_class_of
from .group_core import FamilyGroup, GroupElement, GroupParams, make_group

__version__ = "0.1.0"
