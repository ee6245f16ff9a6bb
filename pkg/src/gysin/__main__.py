from gysin.cli import entry

entry()
