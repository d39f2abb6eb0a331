"""Turning CSV files, line streams and WAV audio into statements."""

from .audio import (
    AudioClip,
    AudioFormatError,
    UtteranceSegment,
    VadConfig,
    frame_rms,
    read_wav,
    segment_audio,
    write_wav,
)
from .csvio import (
    RESULT_HEADER,
    CsvParseError,
    SchemaError,
    read_csv,
    read_labels,
    read_results,
    write_results,
)
from .live import read_live
from .spelling import Dictionary, load_dictionary, normalize_spelling
from .transcribe import TranscriptionBatch, TranscriptionError, transcribe, transcribe_segments

__all__ = [
    "AudioClip", "AudioFormatError", "UtteranceSegment", "VadConfig", "frame_rms", "read_wav",
    "segment_audio", "write_wav", "RESULT_HEADER", "CsvParseError", "SchemaError", "read_csv",
    "read_labels", "read_results", "write_results", "read_live", "Dictionary", "load_dictionary",
    "normalize_spelling", "TranscriptionBatch", "TranscriptionError", "transcribe",
    "transcribe_segments",
]
