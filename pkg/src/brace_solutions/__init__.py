from brace_solutions import config  # isort:skip; load braces config

import brace_solutions.lib.brace as brace
import brace_solutions.lib.deform as deform
import brace_solutions.lib.inspect as inspect
import brace_solutions.lib.semigroup as semigroup
import brace_solutions.lib.solution as solution
import brace_solutions.lib.substructure as substructure
import brace_solutions.lib.truss as truss
import brace_solutions.utils as utils
from brace_solutions.lib.brace import Level, WeakBrace, build_brace, verify_weak_brace
from brace_solutions.lib.core import (
    Biconditional,
    CarrierSubset,
    IdentityCheck,
    Implication,
    Witness,
)
from brace_solutions.lib.deform import (
    deformation_report,
    deformed_check_solution,
    deformed_solution,
    r_check,
    right_distributor,
)
from brace_solutions.lib.inspect import catalog, catalog_record, equivalence_partition
from brace_solutions.lib.io.documents import (
    StructureDoc,
    build,
    dump,
    load,
    parse,
    read_document,
    render,
    write_document,
)
from brace_solutions.lib.io.registry import builtin
from brace_solutions.lib.semigroup import CayleyTable, build_group, classify
from brace_solutions.lib.solution import (
    PairMap,
    check_braid,
    find_equivalence,
    properties,
)
from brace_solutions.lib.substructure import distributor_structure
from brace_solutions.lib.truss import (
    Heap,
    NearTruss,
    Retraction,
    build_retraction,
    decomposition_check,
    near_truss_solution,
    restriction_equivalence,
    verify_heap,
    verify_near_truss,
)
from brace_solutions.utils import (
    AxiomViolation,
    MalformedInput,
    PreconditionFailed,
    SearchBudgetExceeded,
    UnsupportedStructure,
)

from brace_solutions.version import __version__
