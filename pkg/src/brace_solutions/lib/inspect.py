from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from typing import Any

import awkward as ak
import dask.config

from brace_solutions.lib.brace import WeakBrace, is_two_sided
from brace_solutions.lib.core import map_shards
from brace_solutions.lib.deform import deformation_report
from brace_solutions.lib.io.registry import builtin
from brace_solutions.lib.solution import PairMap, find_equivalence
from brace_solutions.utils import SearchBudgetExceeded, as_index_list

log = logging.getLogger(__name__)


def equivalence_partition(
    maps: Sequence[tuple[int, PairMap]], budget: int | None = None
) -> list[list[int]]:
    """Group parameters whose maps are equivalent solutions.

    Parameters
    ----------
    maps : sequence of (int, PairMap)
        Parameter and map pairs, in the order the classes should be
        opened.
    budget : int, optional
        Passed on to :func:`~brace_solutions.lib.solution.find_equivalence`.

    Returns
    -------
    list of list of int
        The classes, each sorted, ordered by their smallest member.

    Raises
    ------
    SearchBudgetExceeded
        If the carrier is too large to search.

    """
    classes: list[tuple[PairMap, list[int]]] = []
    for z, r in maps:
        for representative, members in classes:
            if r == representative or find_equivalence(r, representative, budget) is not None:
                members.append(z)
                break
        else:
            classes.append((r, [z]))
    return sorted((sorted(members) for _, members in classes), key=lambda c: c[0])


def catalog_record(w: WeakBrace, budget: int | None = None) -> dict[str, Any]:
    """The catalog entry of one dual weak brace.

    ``partition`` groups the parameters of the deformed solutions
    ``r_z`` into equivalence classes and is None when the carrier is
    too large for the search.

    """
    report = deformation_report(w)
    solutions = [(z, d.r_z) for z, d in sorted(report.per_z.items()) if d.is_solution]
    try:
        partition: list[list[int]] | None = equivalence_partition(solutions, budget)
    except SearchBudgetExceeded as err:
        log.debug("no partition for %s: %s", w.name, err)
        partition = None
    distributor = as_index_list(report.distributor)
    return {
        "name": w.name,
        "n": w.n,
        "level": str(w.level),
        "distributor": distributor,
        "distributor_size": len(distributor),
        "solution_count": len(solutions),
        "two_sided": is_two_sided(w),
        "partition": partition,
    }


def _builtin_record(name: str, budget: int | None) -> dict[str, Any]:
    return catalog_record(builtin(name), budget)


def catalog(names: Iterable[str] | None = None, budget: int | None = None) -> ak.Array:
    """Catalog records of built-in structures as an array of records.

    ``names`` defaults to ``braces.catalog.builders``. The records are
    computed as one dask task per structure and come back in the
    order of ``names``.

    """
    if names is None:
        names = dask.config.get("braces.catalog.builders")
    records = map_shards(_builtin_record, list(names), budget)
    return ak.Array(records)


def catalog_records(array: ak.Array) -> list[dict[str, Any]]:
    """Plain Python records of a catalog, ready for JSON output."""
    return ak.to_list(array)
