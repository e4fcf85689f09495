"""hrimux: robot-agnostic multimodal interaction middleware.

Menu-driven interaction FSM with signal and event input schemas, gesture
and touchscreen input layers, a line-protocol pub/sub bus, a simulated
dual-arm robot with kinesthetic teaching, and the statistics toolbox used
to evaluate comparative input-modality studies.
"""

__version__ = "0.1.0"
