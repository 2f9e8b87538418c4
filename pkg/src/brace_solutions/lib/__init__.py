from brace_solutions.lib.brace import Level, WeakBrace, verify_weak_brace
from brace_solutions.lib.core import IdentityCheck
from brace_solutions.lib.deform import deformed_solution, r_check, right_distributor
from brace_solutions.lib.semigroup import CayleyTable
from brace_solutions.lib.solution import PairMap, check_braid, find_equivalence
from brace_solutions.lib.truss import Heap, NearTruss, Retraction
