import json

import pystache

from solitonca.crystal import format_coords, format_element

TRACE_TEMPLATE = "{{t}}: {{{cells}}}"
LABEL_TEMPLATE = "z^{{power}} B[{{length}}]{{coords}}"
LABELS_TEMPLATE = "{{t}}: {{#labels}}{{{.}}} {{/labels}}{{^labels}}-{{/labels}}"
SCATTER_TEMPLATE = "{{role}}: {{#labels}}{{{.}}} {{/labels}}"
STEPS_TEMPLATE = "steps: {{steps}} energies: {{#energies}}{{.}} {{/energies}}"
VERDICT_TEMPLATE = "{{verdict}}"
TABLE_TEMPLATE = "{{{b}}} (x) {{{c}}} -> {{{c_new}}} (x) {{{b_new}}} ; H={{h}}"
RMATRIX_TEMPLATE = "{{c_new}}|{{b_new}} ; H={{h}}"
CONSERVED_TEMPLATE = "l={{l}} E={{energy}} N={{count}}"
CHECK_TEMPLATE = "{{status}} {{{name}}} ({{checked}} checked){{#failures}}\n    {{{.}}}{{/failures}}"
SUITE_TEMPLATE = "suite {{name}} seed {{seed}}: {{status}}"

FORMATS = ('trace', 'labels', 'json-lines')

class FormatError(Exception):
    pass

def check_format(fmt):
    if fmt not in FORMATS:
        raise FormatError("Output format {fmt} not in {formats}".format(fmt=fmt, formats=", ".join(FORMATS)))
    return fmt

def render(template, records, fmt='trace'):
    """One line per record: mustache text, or a json object for json-lines."""
    check_format(fmt)
    if fmt == 'json-lines':
        return [json.dumps(record, sort_keys=True) for record in records]
    return [pystache.render(template, record).rstrip() for record in records]

def label_text(affine):
    record = {'power': affine.power, 'length': affine.element.capacity, 'coords': format_coords(affine.element)}
    return pystache.render(LABEL_TEMPLATE, record)

def trace_lines(states, fmt='trace'):
    return render(TRACE_TEMPLATE, [{'t': t, 'cells': state.text()} for t, state in enumerate(states)], fmt)

def labels_lines(affines_per_step, fmt='labels'):
    """Affine labels per time step; None marks a step mid collision."""
    records = [{'t': t, 'labels': [label_text(a) for a in affines or []]} for t, affines in enumerate(affines_per_step)]
    return render(LABELS_TEMPLATE, records, fmt)

def scatter_lines(outcome, fmt='trace'):
    records = [
        (SCATTER_TEMPLATE, {'role': 'in', 'labels': [label_text(a) for a in outcome.incoming_affine]}),
        (SCATTER_TEMPLATE, {'role': 'out', 'labels': [label_text(a) for a in outcome.normalized]}),
        (SCATTER_TEMPLATE, {'role': 'predicted', 'labels': [label_text(a) for a in outcome.predicted]}),
        (STEPS_TEMPLATE, {'steps': outcome.steps, 'energies': list(outcome.energies)}),
        (VERDICT_TEMPLATE, {'verdict': 'MATCH' if outcome.match else 'MISMATCH'}),
    ]
    return [line for template, record in records for line in render(template, [record], fmt)]

def table_lines(alg, table, fmt='trace'):
    records = [{'b': format_element(alg, b), 'c': format_element(alg, c), 'c_new': format_element(alg, c_new),
                'b_new': format_element(alg, b_new), 'h': h} for (b, c), (c_new, b_new, h) in table.items()]
    return render(TABLE_TEMPLATE, records, fmt)

def rmatrix_lines(c_new, b_new, h, fmt='trace'):
    return render(RMATRIX_TEMPLATE, [{'c_new': format_coords(c_new), 'b_new': format_coords(b_new), 'h': h}], fmt)

def conserved_lines(energies, spectrum, fmt='trace'):
    records = [{'l': l, 'energy': energy, 'count': spectrum.get(l, 0)} for l, energy in enumerate(energies) if l > 0]
    return render(CONSERVED_TEMPLATE, records, fmt)

def check_record(result):
    return {'status': 'PASS' if result.passed else 'FAIL', 'name': result.name, 'checked': result.checked,
            'failures': list(result.failures[:5])}

def checks_lines(results, fmt='trace'):
    return render(CHECK_TEMPLATE, [check_record(result) for result in results], fmt)

def suite_lines(report, fmt='trace'):
    header = {'name': report.name, 'seed': report.seed, 'status': 'PASS' if report.passed else 'FAIL'}
    return render(SUITE_TEMPLATE, [header], fmt) + checks_lines(report.results, fmt)
