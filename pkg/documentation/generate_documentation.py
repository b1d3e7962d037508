# -*- coding: utf-8 -*-
"""Render website/commands/*.json into README.md next to this script."""
import json
import os

COMMANDS = 'website/commands'
SOURCE = '../diagasym/modules/commands'


def render_field(field, value):
    if isinstance(value, list):
        return f"- **{field}**:\n" + ''.join(f"> - {item}\n" for item in value)
    quoted = value.replace('\n', '\n>')
    return f"- **{field}**:\n>{quoted}\n"


def render_command(path):
    name = os.path.basename(path)[:-len('.json')]
    with open(path, 'rt') as f:
        definition = json.load(f)
    parts = [f'\n#### [{name}]({SOURCE}/{name}.py)\n',
             f"\n{definition.pop('description')}\n",
             f"\n~~~~bash\n{definition.pop('usage')}\n~~~~\n"]
    parts.extend(render_field(field, value) for field, value in sorted(definition.items()) if value)
    parts.append('\n-----\n')
    return ''.join(parts)


def write_doc(root_path):
    directory = os.path.join(root_path, COMMANDS)
    pages = [render_command(os.path.join(directory, filename))
             for filename in sorted(os.listdir(directory)) if filename.endswith('.json')]
    with open(os.path.join(root_path, 'README.md'), 'w') as w:
        w.write('# diagasym commands\n' + ''.join(pages))


if __name__ == '__main__':
    write_doc(os.path.dirname(os.path.realpath(__file__)))
