"""Boolean functions as a formal language: codec, grammar and Turing machine."""

__version__ = "0.1.0"
