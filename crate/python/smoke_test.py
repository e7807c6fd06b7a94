"""Quick check that the extension module loads and agrees with known values."""

import pyhatp3 as h

g = h.Group("g2", 5)
assert g.order() == 125
x = g.element("a^2*b^3*c")
assert (x * x.inverse()).exponents() == (0, 0, 0)
assert x.pow(5).exponents() == (0, 0, 0)

graph = g.cayley_graph("a,b,a^2*b,a^2*b^3*c")
assert graph.n == 125 and graph.valency() == 8
assert graph.automorphism_order() == 500
prof = graph.classify()
assert prof["class"] == "half_arc_transitive", prof
assert g.aut_stabilizer_order("a,b,a^2*b,a^2*b^3*c") == 4

assert g.isomorphic("a,b,a^2*b,a^2*b^3*c", "a,b,a^2*b*c^3,a^2*b^3*c^3") is not None
assert g.isomorphic("a,b,a^2*b,a^2*b^3*c", "a,b,a^2*b*c,a^2*b^3") is None

fam = h.family(7, 1, j=3)
assert fam.n == 343 and fam.valency() == 6
assert fam.export("graph6").startswith("~")

sols = h.solve_eqs(5, "v8_cyclic")
assert (2, 1, 0) in sols

rep = h.census("g2", 5, 8)
assert rep["verdict"]["pass"] and len(rep["hat_classes"]) == 2
assert h.verify(3, 6)["pass"]
print("smoke test ok")
