"""Static word-vector export from pretrained contextual encoders."""

from .exporter import ExportError, ExportManifest, export_vocab_vectors, read_vocab

__all__ = ["ExportError", "ExportManifest", "export_vocab_vectors", "read_vocab"]
