from ..errors import InputError

# Reported next to file-based runs, informational only
REFERENCE_CONTACTS = {'raw_pairs': 1694, 'kc_pairs': 1882, 'growth': 0.118}

SECTION_ORDER = ('config', 'lineage', 'ingest', 'closure', 'pagerank', 'contagion',
                 'visits', 'influence', 'drift', 'projections', 'notices')


def assemble_report(**sections):
    """One document with the computed sections in a fixed order."""
    present = {k: v for k, v in sections.items() if v is not None}
    analytics = set(present) - {'config', 'lineage', 'notices'}
    if not analytics:
        raise InputError('No analytics to report', code='empty_report')
    unknown = set(present) - set(SECTION_ORDER)
    if unknown:
        raise InputError(f'Unknown report sections: {", ".join(sorted(unknown))}',
                         code='unknown_section')
    return {key: present[key] for key in SECTION_ORDER if key in present}


def reference_check(raw_pairs, kc_pairs):
    growth = (kc_pairs - raw_pairs) / raw_pairs if raw_pairs else 0.0
    return {
        'reference': dict(REFERENCE_CONTACTS),
        'observed': {'raw_pairs': raw_pairs, 'kc_pairs': kc_pairs, 'growth': growth},
        'matches_reference': (raw_pairs == REFERENCE_CONTACTS['raw_pairs']
                              and kc_pairs == REFERENCE_CONTACTS['kc_pairs']),
    }
