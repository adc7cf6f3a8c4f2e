# ============================================================================
# KOSZUL ENGINE - RAPPORTS (JSON MACHINE + TABLE TEXTE)
# ============================================================================

import json
import sys
from pathlib import Path
from typing import Optional

from core import __version__
from models.problem import Problem


def envelope(command: str, result: dict, problem: Optional[Problem] = None,
             parameters: Optional[dict] = None) -> dict:
    """Document de rapport : version, entrée (digest), paramètres, résultat."""
    document = {
        'version': __version__,
        'command': command,
        'parameters': parameters or {},
        'result': result,
    }
    if problem is not None:
        document['input'] = {
            'name': problem.name,
            'digest': problem.digest,
            'field': problem.field.label,
        }
    return document


def dumps(document: dict) -> str:
    """Sérialisation déterministe (octet pour octet entre deux exécutions)."""
    return json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def emit(document: dict, output: Optional[str] = None):
    text = dumps(document)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ============================================================================
# RENDU TEXTE
# ============================================================================

def _table(headers, rows) -> str:
    widths = [len(str(h)) for h in headers]
    for row in rows:
        widths = [max(w, len(str(c))) for w, c in zip(widths, row)]
    line = lambda cells: "  ".join(str(c).rjust(w) for c, w in zip(cells, widths))
    out = [line(headers), "  ".join("-" * w for w in widths)]
    out.extend(line(row) for row in rows)
    return "\n".join(out)


def render_homology(result: dict) -> str:
    rows = result.get('rows', [])
    width = max((len(r['terms']) for r in rows), default=0)
    headers = ["d"] + [f"T{p}" for p in range(width)] + [f"H{p}" for p in range(width)] + ["χ"]
    body = [
        [r['degree']] + r['terms'] + r['homology'] + [r['euler_characteristic']]
        for r in rows
    ]
    scope = result.get('acyclic_scope', '')
    verdict = "acyclique" if result.get('acyclic') else "NON acyclique"
    return f"{result['kind']} n={result['n']} ({result['field']}) : {verdict} [{scope}]\n" + _table(headers, body)


def render_text(document: dict) -> str:
    result = document.get('result', {})
    banner = "=" * 60
    title = f"KOSZUL ENGINE {document.get('version', '')} - {document.get('command', '').upper()}"
    lines = [banner, title, banner]
    if 'input' in document:
        lines.append(f"Entrée: {document['input']['name']} ({document['input']['field']}) "
                     f"digest {document['input']['digest'][:12]}")

    if isinstance(result, dict) and 'rows' in result and 'homology' in (result.get('rows') or [{}])[0]:
        lines.append(render_homology(result))
    elif isinstance(result, dict) and result.get('kind') == 'homotopy' and result.get('homology'):
        lines.append(f"Contraction: {'✓' if result['contraction_holds'] else '❌'}")
        lines.append(render_homology(result['homology']))
    elif isinstance(result, dict) and result.get('kind') == 'scan':
        body = [[v['n'], 'oui' if v['acyclic'] else 'non', 'oui' if v['complete'] else 'non']
                for v in result['verdicts']]
        lines.append(_table(["n", "acyclique", "complet"], body))
        lines.append(f"μ = {result['mu']['count'] if result['mu'] else '-'} ; "
                     f"H_μ(Kos_μ) = 0 : {result['top_homology_vanishes']}")
    else:
        for key in sorted(result):
            value = result[key]
            if isinstance(value, (list, dict)) and len(str(value)) > 120:
                value = f"<{type(value).__name__} de {len(value)} éléments>"
            lines.append(f"{key:<28} {value}")
    lines.append(banner)
    return "\n".join(lines) + "\n"
