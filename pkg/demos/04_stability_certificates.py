#!/usr/bin/env python3
"""Numerical l2-stability certificates on a full run.

Keeps the complete per-iteration ledger for a preset run and verifies the
energy bounds the data-selective update satisfies:

  * locally, on every update, the post-update deviation energy plus the
    weighted noiseless-error energy stays strictly below the pre-update
    deviation energy plus the weighted noise energy;
  * globally, the error-to-disturbance energy ratio stays below one at every
    prefix containing an update;
  * the fraction of iterations where the deviation energy grows stays below
    the Gaussian tail bound erfc(sqrt(tau/2)) for gamma = sqrt(tau sigma^2).

The trace round-trips through CSV and re-verifies.
"""

import dataclasses
import tempfile
from pathlib import Path

import numpy as np

from dsvolterra import (
    check_conditional_improvement,
    check_local,
    erfc_bound,
    harness,
    monotonicity_stats,
    prefix_ratios,
    read_trace_csv,
    verify_trace,
    write_trace_csv,
)

config = dataclasses.replace(harness.preset("fig1a"), trials=1, seeds=(1,))
result = harness.compare_algorithms(config)
records = result["trials"][0]["records"]["ds_fixed"]
verdict = result["trials"][0]["verdicts"]["ds_fixed"]

print(f"run: {config.name}, {verdict.total_iterations} iterations, seed 1")
print(f"updates: {verdict.update_count} ({100 * verdict.update_rate:.1f}%)\n")

local_ok = sum(check_local(r) for r in records)
cond_ok = sum(check_conditional_improvement(r) for r in records)
print(f"local energy inequality:      {local_ok}/{len(records)} rows hold")
print(f"conditional improvement:      {cond_ok}/{len(records)} rows hold")

ratios = prefix_ratios(records, records[0].wtilde_sq_before)
updated = np.cumsum([r.updated for r in records])
worst = ratios[updated >= 1].max()
print(f"global ratio, worst prefix:   {worst:.6f} (< 1)")
print(f"global ratio, final:          {verdict.global_ratio:.6f}")

count, fraction, in_transient = monotonicity_stats(records)
bound = erfc_bound(5.0)
print(f"\ndeviation-energy increases:   {count} of {len(records)}"
      f" (fraction {fraction:.4f} < tail bound {bound:.4f})")
print(f"increases during transient:   {in_transient}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "trace.csv"
    write_trace_csv(records, path)
    problems = verify_trace(read_trace_csv(path))
    print(f"\nCSV round trip: {path.stat().st_size} bytes,"
          f" re-verification problems: {len(problems)}")
