from .dtw import dtw_distance
from .recognizer import (
    CalibrationError,
    GESTURE_SLOTS,
    GestureDetection,
    GestureLabel,
    GestureTemplate,
    ImuSample,
    IMU_RATE_HZ,
    OnlineRecognizer,
    calibrate_templates,
    gesture_to_signal,
    resample_to_length,
)
from .stochastic import DEFAULT_RECALL, StochasticRecognizerModel, stochastic_recognize

__all__ = [
    "CalibrationError",
    "DEFAULT_RECALL",
    "GESTURE_SLOTS",
    "GestureDetection",
    "GestureLabel",
    "GestureTemplate",
    "ImuSample",
    "IMU_RATE_HZ",
    "OnlineRecognizer",
    "StochasticRecognizerModel",
    "calibrate_templates",
    "dtw_distance",
    "gesture_to_signal",
    "resample_to_length",
    "stochastic_recognize",
]
