import dask.sizeof

import brace_solutions.lib.semigroup as sg
import brace_solutions.lib.truss as tr
from brace_solutions.lib.solution import twist_map


def test_sizeof_tables():
    t = sg.cyclic_group(3)
    assert dask.sizeof.sizeof(t) == t.table.nbytes == 72


def test_sizeof_structures(b6):
    assert dask.sizeof.sizeof(b6) == 2 * 36 * 8
    r = twist_map(4)
    assert dask.sizeof.sizeof(r) == r.sigma.nbytes + r.tau.nbytes
    ring = tr.truss_of_ring_mod(3)
    assert dask.sizeof.sizeof(ring) == ring.tern.nbytes + ring.mul.table.nbytes
    heap = tr.heap_of_group(sg.cyclic_group(2))
    assert dask.sizeof.sizeof(heap) == heap.tern.nbytes
