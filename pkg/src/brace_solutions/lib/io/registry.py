"""Named constructors that documents and the command line can refer to.

``BUILDERS`` maps a builder name to a function of keyword parameters;
parameters that are themselves structures arrive already built.
``BUILTINS`` names the parameterless catalog entries.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

from brace_solutions.lib import brace as br
from brace_solutions.lib import semigroup as sg
from brace_solutions.lib import truss as tr
from brace_solutions.utils import MalformedInput

BUILDERS: dict[str, Callable[..., Any]] = {
    # tables
    "cyclic": lambda n: sg.cyclic_group(n),
    "symmetric": lambda n: sg.symmetric_group(n),
    "dihedral": lambda n: sg.dihedral_group(n),
    "units_mod": lambda m: sg.units_mod(m),
    "table_product": lambda left, right: sg.direct_product(left, right),
    "clifford_monoid_3": sg.clifford_monoid_3,
    # weak braces
    "trivial": lambda of: br.trivial(of),
    "almost_trivial": lambda of: br.almost_trivial(of),
    "opposite": lambda of: br.opposite(of),
    "rump_mod": lambda n: br.rump_mod(n),
    "rump_circle": lambda m: br.rump_circle(m),
    "sandwich_units": lambda m: br.sandwich_units(m),
    "units_chain": lambda k: br.units_chain(k),
    "direct_product": lambda left, right: br.direct_product(left, right),
    # heaps and near-trusses
    "heap_of_group": lambda of: tr.heap_of_group(of),
    "truss_of_brace": lambda of: tr.truss_of_brace(of),
    "truss_of_ring_mod": lambda m: tr.truss_of_ring_mod(m),
    "product_near_truss": lambda brace, truss: tr.product_near_truss(brace, truss)[0],
    # retractions
    "product_retraction": lambda brace, truss: tr.product_near_truss(brace, truss)[1],
    "identity_retraction": lambda of: tr.identity_retraction(of),
    "terminal_retraction": lambda of: tr.terminal_retraction(of),
    "semidirect_retraction": lambda k: tr.semidirect_retraction(k),
}


BUILTINS: dict[str, Callable[[], Any]] = {
    "b6": lambda: br.rump_mod(6),
    "rump4": lambda: br.rump_mod(4),
    "rump8": lambda: br.rump_mod(8),
    "u8": lambda: br.sandwich_units(8),
    "trivial-s3": lambda: br.trivial(sg.symmetric_group(3)),
    "almost-trivial-s3": lambda: br.almost_trivial(sg.symmetric_group(3)),
    "clifford3": lambda: br.trivial(sg.clifford_monoid_3()),
    "units-chain3": lambda: br.units_chain(3),
    "u8-x-b6": lambda: br.direct_product(br.sandwich_units(8), br.rump_mod(6)),
    "trivial-z2": lambda: br.trivial(sg.cyclic_group(2)),
    "rump-circle4": lambda: br.rump_circle(4),
    "rump-circle6": lambda: br.rump_circle(6),
}


def get_builder(name: str, path: str = "name") -> Callable[..., Any]:
    """The builder registered as ``name``; built-ins take no parameters."""
    if name in BUILDERS:
        return BUILDERS[name]
    if name in BUILTINS:
        return BUILTINS[name]
    raise MalformedInput(
        f"unknown builder {name!r}; expected one of "
        f"{sorted(BUILDERS) + sorted(BUILTINS)}",
        path=path,
    )


def builtin(name: str) -> Any:
    """Build the catalog entry ``name``."""
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise MalformedInput(
            f"unknown built-in {name!r}; expected one of {sorted(BUILTINS)}"
        ) from None
    result = factory()
    result.name = name
    return result
