"""Toolkit for a gamified virtual-museum curation system.

Subpackages:

- ``geometry``: mesh loading, quadric-error-metric simplification, orientation
  normalization, export to PLY / glTF binary.
- ``scene``: declarative museum scene model (rooms, stands, exhibits,
  teleport graph, lighting metadata) with validation and layout helpers.
- ``game``: the three-level "learn first, play later" state machine with
  placement-accuracy scoring and teleport gating.
- ``sessionlog``: event-sourced interaction logs with deterministic replay.
- ``analytics``: SUS scoring, Shapiro-Wilk and Mann-Whitney U tests.
- ``gateway``: HTTP service and unified CLI over all of the above.
"""

__version__ = "0.1.0"
