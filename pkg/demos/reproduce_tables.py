"""Print computed vs tabulated energies for both golden tables."""

from kgyukawa.cli import run_table
from kgyukawa.output import to_csv

for which in ("I", "II"):
    columns, rows = run_table(which)
    print(f"Table {which}, worst |diff| = {max(r['abs_diff'] for r in rows):.2e}")
    print(to_csv(columns, rows))
