"""Exact classification of semisimple subalgebras of semisimple Lie algebras."""

from .cartan import canonical_matrix, parse_type, type_label
from .chevalley import CanonicalGenSet, LieAlgebra, algebra
from .classify import Database, RunConfig, Session, dump_database, load_database
from .field import NumberField, QQ
from .roots import RootSystem, root_system, root_system_of_type

__all__ = [
    "CanonicalGenSet",
    "Database",
    "LieAlgebra",
    "NumberField",
    "QQ",
    "RootSystem",
    "RunConfig",
    "Session",
    "algebra",
    "canonical_matrix",
    "dump_database",
    "load_database",
    "parse_type",
    "root_system",
    "root_system_of_type",
    "type_label",
]
