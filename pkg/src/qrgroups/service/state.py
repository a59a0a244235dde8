"""Shared caches so repeated requests reuse expensive computations."""

from __future__ import annotations

import threading

from ..errors import UnsupportedParameters
from ..groups import (build_abelian, build_alt, build_quaternion, build_sl,
                      build_sp, build_sym, build_tree_level)
from ..groups.classes import ClassData, conjugacy_classes
from ..groups.table import GroupTable
from ..reptheory import CharacterTable, character_table
from .schemas import GroupRequest


def _require(value, name: str, family: str) -> int:
    if value is None:
        raise UnsupportedParameters(f"family {family!r} needs {name}")
    return int(value)


def build_group(spec: GroupRequest) -> GroupTable:
    family = spec.family
    budget = spec.element_budget
    if family == "sl":
        return build_sl(_require(spec.k, "k", family),
                        _require(spec.p, "p", family), spec.n,
                        element_budget=budget)
    if family == "sp":
        return build_sp(_require(spec.k, "k", family),
                        _require(spec.p, "p", family), spec.n,
                        element_budget=budget)
    if family == "alt":
        return build_alt(_require(spec.k, "k", family), element_budget=budget)
    if family == "sym":
        return build_sym(_require(spec.k, "k", family), element_budget=budget)
    if family == "tree":
        return build_tree_level(_require(spec.k, "k", family), spec.depth,
                                element_budget=budget)
    if family == "abelian":
        if not spec.factors:
            raise UnsupportedParameters("family 'abelian' needs factors")
        return build_abelian(spec.factors, element_budget=budget)
    return build_quaternion()


def _group_key(spec: GroupRequest) -> tuple:
    return (spec.family, spec.k, spec.p, spec.n, spec.depth,
            tuple(spec.factors) if spec.factors else None)


class ServiceState:
    """Build-once caches for tables, class data, and character tables."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._tables: dict[tuple, GroupTable] = {}
        self._classes: dict[tuple, ClassData] = {}
        self._character_tables: dict[tuple, CharacterTable] = {}

    def table(self, spec: GroupRequest) -> GroupTable:
        key = _group_key(spec)
        with self._lock:
            if key not in self._tables:
                self._tables[key] = build_group(spec)
            return self._tables[key]

    def classes(self, spec: GroupRequest) -> tuple[GroupTable, ClassData]:
        key = _group_key(spec)
        table = self.table(spec)
        with self._lock:
            if key not in self._classes:
                self._classes[key] = conjugacy_classes(table)
            return table, self._classes[key]

    def characters(self, spec: GroupRequest,
                   seed: int) -> tuple[GroupTable, ClassData, CharacterTable]:
        table, classes = self.classes(spec)
        key = (_group_key(spec), seed)
        with self._lock:
            if key not in self._character_tables:
                self._character_tables[key] = character_table(
                    table, classes, seed=seed)
            return table, classes, self._character_tables[key]
