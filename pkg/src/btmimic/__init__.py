"""Behavior-tree playstyle mimicry toolkit.

Subpackages:
  hexsim     - deterministic hex-grid RTS simulation with replayable action logs
  btree      - behavior-tree engine with parameterized node templates
  strategies - the expert tree templates (aggressive A, defensive B)
  similarity - snapshot timelines and the trend-series similarity metric
  optimize   - criterion evaluation, memetic search graph, simulated annealing
  harness    - experiment specs, CLI commands, file formats
"""

__version__ = "0.1.0"
