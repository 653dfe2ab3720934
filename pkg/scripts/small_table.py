"""A small positivity table over a few fields (seconds, not the full-scale run)."""

import sys

from surfcodes import experiments
from surfcodes.gf import field_from_q

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rows = []
for q, d in [(3, 3), (4, 3), (5, 3), (7, 3)]:
    s = experiments.run_table(field_from_q(q), d, d - 2, trials, seed=2024)
    rows.append(s)
    print(f"F_{q} d={d}: {s.positives}/{s.trials} positive, mean length {s.mean_length:.1f}, "
          f"{s.rejected_singular} singular draws rejected")
print(experiments.summaries_to_csv(rows), end="")
