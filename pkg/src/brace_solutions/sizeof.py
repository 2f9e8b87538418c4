def register(sizeof):
    @sizeof.register_lazy("brace_solutions")
    def lazy_sizeof_structures():
        from brace_solutions.lib.brace import WeakBrace
        from brace_solutions.lib.semigroup import CayleyTable
        from brace_solutions.lib.solution import PairMap
        from brace_solutions.lib.truss import Heap, NearTruss

        @sizeof.register(CayleyTable)
        def sizeof_cayley_table(t):
            return t.table.nbytes

        @sizeof.register(WeakBrace)
        def sizeof_weak_brace(w):
            return w.add.table.nbytes + w.mul.table.nbytes

        @sizeof.register(PairMap)
        def sizeof_pair_map(r):
            return r.sigma.nbytes + r.tau.nbytes

        @sizeof.register(Heap)
        def sizeof_heap(h):
            return h.tern.nbytes

        @sizeof.register(NearTruss)
        def sizeof_near_truss(t):
            return t.tern.nbytes + t.mul.table.nbytes
