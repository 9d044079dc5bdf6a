"""Shared fixtures: memoized fusion systems, analyses, and cached reports.

Heavy objects (fusion systems of the survey groups) are built once per
session and shared across test modules; reports are written through the
disk cache so the survey and CLI tests read them back instantly.
"""

from __future__ import annotations

import os

import pytest

from fusionsys import catalog
from fusionsys.cache import ReportCache
from fusionsys.classify import classify
from fusionsys.fusion import FusionSystem, group_fusion
from fusionsys.indexp import PPrimeAnalysis
from fusionsys.report import ReportOptions, report_for_system


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fusion-cache")
    os.environ["FUSIONSYS_CACHE_DIR"] = str(d)
    return d


class SharedObjects:
    def __init__(self, cache_path):
        self.options = ReportOptions()
        self.cache = ReportCache(cache_path)
        self._fusions: dict = {}
        self._analyses: dict = {}
        self._reports: dict = {}

    def fusion(self, label: str, p: int) -> FusionSystem:
        key = (label, p)
        if key not in self._fusions:
            G = catalog.build(label)
            self._fusions[key] = group_fusion(G, p, label=label)
        return self._fusions[key]

    def analysis(self, label: str, p: int) -> PPrimeAnalysis:
        key = (label, p)
        if key not in self._analyses:
            F = self.fusion(label, p)
            self._analyses[key] = PPrimeAnalysis(F, classified=classify(F))
        return self._analyses[key]

    def report(self, label: str, p: int) -> dict:
        key = (label, p)
        if key not in self._reports:
            rep = self.cache.load(label, p, self.options)
            if rep is None:
                rep = report_for_system(self.fusion(label, p), label, p,
                                        self.options,
                                        analysis=self.analysis(label, p))
                self.cache.store(label, p, self.options, rep)
            self._reports[key] = rep
        return self._reports[key]


@pytest.fixture(scope="session")
def shared(cache_dir):
    return SharedObjects(cache_dir)
