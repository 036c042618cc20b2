"""Finite action categories: chains acting on chains and on tree operads.

Submodules:

- ``ordinal``: monotone maps of finite ordinals, with the empty ordinal.
- ``ptree``: planar rooted trees and morphisms of their free operads.
- ``fincat``: explicit finite categories, operads, actions, axiom checkers.
- ``chainact``: the formal objects <n|k> (a chain acting on a chain).
- ``treeact``: the formal objects <n|S> (a chain acting on a tree operad).
- ``symact``: symmetrization and the crossed-group (nonplanar) layer.
- ``nerve``: nerves of finite actions and restriction along shape maps.
- ``verify``: windowed Reedy / elegance / generalized-Reedy verification.
- ``cli``: the ``actcat`` command line tool.
"""

__version__ = "0.1.0"
