"""Smoke test for the Python bindings; run after `pip install crates/py`."""

import fibercone_py as fc

s = fc.NumericalSemigroup([4, 5, 6, 7])
assert s.multiplicity() == 4 and 8 in s and 3 not in s
i = fc.SemigroupIdeal(s, [4, 5, 6])
assert i.mu() == 3
assert i.power(2).mingens() == [8, 9, 10, 11]

cube = fc.MonomialIdeal([[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1], [2, 1, 0],
                         [2, 0, 1], [1, 2, 0], [0, 2, 1], [1, 0, 2], [0, 1, 2]])
assert cube.mu() == 10 and cube.colength() == 10
assert cube.mixed_multiplicities() == [1, 3, 9, 27]

quartic = fc.MonomialIdeal([[4, 0], [3, 1], [1, 3], [0, 4]])
assert quartic.mu_powers(4) == [1, 4, 9, 13, 17]
assert fc.rational_reconstruct(quartic.mu_powers(14), 2) == [1, 2, 2, -1]
assert fc.predict_theorem(3, 10, 2) == [1, 7, 1]

report = fc.analyze_spec("ring semigroup gens 4,5,6,7\nideal t^4, t^5, t^6\n")
assert report["theorem"] == "Thm3.3" and report["theorem.verdict"] == "Match"
assert report["cm.verdict"] == "CM"

try:
    fc.analyze_spec("ring polynomial vars x,y\nideal x^2, x*y\n")
except ValueError as e:
    print("rejected as expected:", e)
else:
    raise AssertionError("non-primary ideal accepted")

print("smoke test passed")
