"""Synthetic office-like contact data in the `t i j` / `i D_i` format."""

import logging

from ..models.graph import CONTACT_INTERVAL
from ..utils.seeds import make_rng
from .contacts import ContactFileRow, MetadataRow

logger = logging.getLogger(__name__)


def generate_synthetic(config):
    """Sample co-located groups per timestamp and emit a spanning tree of each.

    A spanning tree of a group of three or more people is a strict subset of
    the group's clique, so completion always has pairs to infer.
    """
    rng = make_rng(config.seed, 'synthetic')
    people = [str(p + 1) for p in range(config.n_people)]
    departments = [f'D{d + 1}' for d in range(config.n_departments)]

    assignment = {}
    for index, person in enumerate(people):
        # Round-robin first so every department is populated when possible
        if index < len(departments):
            assignment[person] = departments[index]
        else:
            assignment[person] = departments[int(rng.integers(len(departments)))]
    metadata = [MetadataRow(i=person, department=assignment[person]) for person in people]
    pools = {d: [p for p in people if assignment[p] == d] for d in departments}

    contacts = []
    max_size = min(config.max_group_size, config.n_people)
    min_size = min(config.min_group_size, max_size)
    for step in range(config.n_timestamps):
        t = CONTACT_INTERVAL * (step + 1)
        if config.fixed_rate:
            n_groups = int(round(config.event_rate))
        else:
            n_groups = int(rng.poisson(config.event_rate))
        seen = set()
        for _ in range(n_groups):
            if max_size < 2:
                break
            size = int(rng.integers(min_size, max_size + 1))
            pool = pools[departments[int(rng.integers(len(departments)))]]
            if len(pool) < size or rng.random() >= config.department_affinity:
                pool = people
            members = [pool[k] for k in rng.choice(len(pool), size=size, replace=False)]
            for position in range(1, len(members)):
                anchor = members[int(rng.integers(position))]
                row = ContactFileRow(t=t, i=anchor, j=members[position])
                if (t,) + row.pair in seen:
                    continue
                seen.add((t,) + row.pair)
                contacts.append(row)

    logger.info('Generated %d synthetic contacts for %d people over %d timestamps',
                len(contacts), config.n_people, config.n_timestamps)
    return contacts, metadata


def contacts_to_text(contacts):
    return ''.join(f'{row.t} {row.i} {row.j}\n' for row in contacts)


def metadata_to_text(metadata):
    return ''.join(f'{row.i} {row.department}\n' for row in metadata)
