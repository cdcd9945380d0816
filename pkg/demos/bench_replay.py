"""
Trace files and replay reports
==============================

Generate a trace, write it in the text format, read it back and replay it.
The same steps are available from the shell as ``python -m dynmsf gen ...``
and ``python -m dynmsf run ...``.
"""
import io
from dynmsf import bench

trace = bench.gen_grid_adversary(side=4, batches=50, seed=2)
text = bench.trace_text(trace)
print(text.splitlines()[:6])

report = bench.run(bench.parse_trace(io.StringIO(text)), eps=0.5, checkpoint_every=50)
print(report.to_csv())
print("envelope violations:", report.violations)
