from ratebound.cli.commands import bounds, compare, entropy, mi, simulate

COMMANDS = (bounds, simulate, compare, mi, entropy)


def include_commands(subparsers) -> None:
    for command in COMMANDS:
        command.register(subparsers)
