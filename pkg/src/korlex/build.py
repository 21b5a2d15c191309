"""Compilation of a resource bundle into a word lexicon.

Steps, in fixed order:

1. parse the resources, converting syllables to letters;
2. generate allomorph and derived-stem lexicons;
3. compile the stem lexicon into a minimal automaton;
4. flatten each suffix RTN and compile it into an ending automaton;
5. link stems to endings through their compatibility symbols.
"""

import logging
import time

from .allomorph import generate_variant_lexicon
from .automaton import compile_entries
from .graphs import build_call_graph, parse_graph
from .lexicon import StemRecord, link
from .resources import (
    ResourceError,
    ending_graph_name,
    load_manifest,
    parse_cs_list,
    parse_stem_lexicon,
    parse_tagset,
)
from .rtn import enumerate_endings

log = logging.getLogger(__name__)

STEPS = {
    1: "parse resources",
    2: "generate variants",
    3: "compile stems",
    4: "compile endings",
    5: "link",
}


class CompileError(Exception):
    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"step {step} ({STEPS[step]}): {cause}")


class Bundle:
    """Parsed resources of a manifest (step 1 output)."""

    def __init__(self, manifest):
        self.manifest = manifest
        missing = manifest.missing_files()
        if missing:
            role, path = missing[0]
            raise ResourceError(f"missing {role} file: {path}")
        self.tagset = parse_tagset(manifest.tagset)
        self.cs_list = parse_cs_list(manifest.cs)
        self.stems = []
        errors = []
        for path in manifest.stems:
            entries, errs = parse_stem_lexicon(path, self.tagset, self.cs_list)
            self.stems.extend(entries)
            errors.extend(errs)
        if errors:
            raise ResourceError(
                f"{len(errors)} bad stem line(s):\n" + "\n".join(str(e) for e in errors)
            )
        self.allomorph_graphs = self._load(manifest.allomorph)
        self.derivation_graphs = self._load(manifest.derivation)
        self.suffix_graphs = self._load(manifest.suffix)
        self.graphs = {}
        for group in (self.allomorph_graphs, self.derivation_graphs, self.suffix_graphs):
            for name, g in group.items():
                if name in self.graphs:
                    raise ResourceError(f"duplicate graph name {name!r}")
                self.graphs[name] = g
        self.call_graph = build_call_graph(self.graphs)
        for g in self.graphs.values():
            for w in g.warnings:
                log.warning(w)

    @staticmethod
    def _load(paths):
        graphs = {}
        for path in paths:
            g = parse_graph(path)
            if g.name in graphs:
                raise ResourceError(f"duplicate graph name {g.name!r}", path)
            graphs[g.name] = g
        return graphs


def load_bundle(manifest_path):
    return Bundle(load_manifest(manifest_path))


def stem_records(entries):
    """Deduplicated, sorted stem records."""
    return sorted({StemRecord(e.surface, e.base, e.tag, e.cs) for e in entries})


def compile_bundle(manifest):
    """Run all five steps; returns ``(lexicon, report)``.

    ``manifest`` is a Manifest or a path to one. Any failure is raised as
    CompileError naming the step.
    """
    report = {"timings": {}}
    clock = time.perf_counter()

    def done(step):
        nonlocal clock
        now = time.perf_counter()
        report["timings"][STEPS[step]] = now - clock
        clock = now

    step = 1
    try:
        if isinstance(manifest, str):
            manifest = load_manifest(manifest)
        bundle = Bundle(manifest)
        report["base_stems"] = len(bundle.stems)
        report["graphs"] = {
            "allomorph": len(bundle.allomorph_graphs),
            "derivation": len(bundle.derivation_graphs),
            "suffix": len(bundle.suffix_graphs),
        }
        done(1)

        step = 2
        variants = generate_variant_lexicon(
            bundle.stems,
            bundle.allomorph_graphs,
            bundle.derivation_graphs,
            bundle.graphs,
            unroll_bound=manifest.unroll_bound,
            allomorphs_of_derived=manifest.allomorphs_of_derived,
            tagset=bundle.tagset,
            cs_list=bundle.cs_list,
        )
        report["variant_entries"] = len(variants)
        done(2)

        step = 3
        stems = stem_records(variants)
        stem_automaton = compile_entries(sorted((s.surface, i) for i, s in enumerate(stems)))
        report["stem_records"] = len(stems)
        done(3)

        step = 4
        endings = []
        ending_automata = {}
        report["endings_per_cs"] = {}
        for cs in sorted({s.cs for s in stems}):
            root = ending_graph_name(cs)
            if root not in bundle.suffix_graphs:
                raise ResourceError(f"no suffix graph {root!r} for compatibility symbol {cs!r}")
            entries = enumerate_endings(root, bundle.graphs, manifest.unroll_bound, bundle.tagset)
            first = len(endings)
            report["endings_per_cs"][cs] = len(entries)
            endings.extend((cs, e) for e in entries)
            ending_automata[cs] = compile_entries(
                (e.surface, first + k) for k, e in enumerate(entries)
            )
        done(4)

        step = 5
        lexicon = link(stem_automaton, stems, ending_automata, endings)
        report["words"] = lexicon.count_words()
        report.update(
            {k: v for k, v in lexicon.counts.items() if k.endswith(("_states", "_transitions"))}
        )
        done(5)
    except (ResourceError, ValueError, OSError) as e:
        raise CompileError(step, e) from e
    return lexicon, report
