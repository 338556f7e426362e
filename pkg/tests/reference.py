"""Reference entropy rates in bits, used as expected values across the suite."""

# h(0.25), h(0.3), h(0.1)
H_QUARTER = 0.811278124459133
H_POINT3 = 0.8812908992306927
H_POINT1 = 0.4689955935892812
# (5/6)·h(0.1) + (1/6)·1 for P = [[0.9, 0.1], [0.5, 0.5]]
MARKOV_RATE = 0.5574963279910677
