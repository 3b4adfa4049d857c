import json
import logging
import os
from dataclasses import dataclass, field

from doublestar.graph import components

logger = logging.getLogger(__name__)

PASS, FAIL, WARN, SKIP = 'PASS', 'FAIL', 'WARN', 'SKIP'


@dataclass(frozen=True)
class Check(object):
    """
    One verdict of a run. FAIL marks a violated identity; WARN marks a stated
    claim that the computation does not reproduce.
    """
    name: str
    status: str
    detail: str = ''
    evidence: object = None
    cap_hit: bool = False

    @classmethod
    def of(cls, name, ok, detail='', evidence=None):
        return cls(name, PASS if ok else FAIL, detail, evidence)

    @classmethod
    def claim(cls, name, ok, detail='', evidence=None):
        return cls(name, PASS if ok else WARN, detail, evidence)

    @classmethod
    def skip(cls, name, detail='', cap_hit=False):
        return cls(name, SKIP, detail, cap_hit=cap_hit)

    @property
    def passed(self):
        return self.status != FAIL

    def to_json(self):
        data = {'name': self.name, 'status': self.status}
        if self.detail:
            data['detail'] = self.detail
        if self.evidence is not None:
            data['evidence'] = self.evidence
        if self.cap_hit:
            data['cap_hit'] = True
        return data


def failed(checks):
    return [c for c in checks if c.status == FAIL]


def graph_summary(graph):
    parts = components(graph)
    return {
        'vertices': graph.vertex_count,
        'edges': graph.edge_count,
        'valency': graph.valency,
        'connected': parts.count == 1,
        'components': parts.count,
        'component_sizes': sorted(set(parts.sizes)),
        'bipartite': graph.is_bipartite,
        'girth': graph.girth,
    }


@dataclass
class AnalysisReport(object):
    """
    Serializable record of one run: inputs, computed sections, checks and the
    graphs to export.
    """
    task: str
    inputs: dict = field(default_factory=dict)
    sections: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    graphs: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    cap_exceeded: bool = False

    def add(self, *checks):
        for check in checks:
            if check.status == FAIL:
                logger.warning('check failed: %s %s', check.name, check.detail)
            if check.cap_hit:
                logger.warning('cap hit: %s %s', check.name, check.detail)
                self.cap_exceeded = True
            self.checks.append(check)

    def extend(self, checks):
        self.add(*checks)

    def section(self, name, data):
        self.sections[name] = data

    def error(self, kind, message):
        self.errors.append({'kind': kind, 'message': message})

    def merge(self, prefix, other):
        """
        Folds another report in, prefixing its section and graph names.
        """
        for name, data in other.sections.items():
            self.sections['%s/%s' % (prefix, name)] = data
        for name, graph in other.graphs.items():
            self.graphs['%s-%s' % (prefix.replace('/', '-'), name)] = graph
        self.add(*[Check('%s/%s' % (prefix, c.name), c.status, c.detail, c.evidence, c.cap_hit) for c in other.checks])
        self.errors.extend({'kind': e['kind'], 'message': '%s: %s' % (prefix, e['message'])} for e in other.errors)
        self.cap_exceeded |= other.cap_exceeded

    @property
    def status_counts(self):
        counts = {PASS: 0, FAIL: 0, WARN: 0, SKIP: 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def exit_status(self):
        if self.cap_exceeded:
            return 3
        if failed(self.checks) or self.errors:
            return 2
        return 0

    def to_json(self):
        data = {
            'task': self.task,
            'inputs': self.inputs,
            'sections': self.sections,
            'checks': [c.to_json() for c in self.checks],
            'summary': self.status_counts,
            'graphs': {name: graph_summary(graph) for name, graph in self.graphs.items()},
            'errors': self.errors,
            'exit_status': self.exit_status,
        }
        return json.dumps(data, indent=2, default=str) + '\n'

    def write(self, out, emit=('json',)):
        """
        Writes report.json and, per requested format, one .g6 and .dot file per graph.

        Returns
        -------
            list of written paths
        """
        os.makedirs(out, exist_ok=True)
        written = []
        if 'json' in emit:
            path = os.path.join(out, 'report.json')
            with open(path, 'w') as f:
                f.write(self.to_json())
            written.append(path)
        for name, graph in self.graphs.items():
            if 'graph6' in emit:
                path = os.path.join(out, name + '.g6')
                with open(path, 'w') as f:
                    f.write(graph.to_graph6() + '\n')
                written.append(path)
            if 'dot' in emit:
                path = os.path.join(out, name + '.dot')
                with open(path, 'w') as f:
                    f.write(graph.to_dot(name.replace('-', '_')))
                written.append(path)
        logger.info('wrote %d files to %s', len(written), out)
        return written
