"""Constructions and verifiers built on top of :mod:`ktres.algebra`."""
