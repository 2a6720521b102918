"""Corpus verification, theorem checkers and the command-line driver."""
