import sys

from eigenid.cli import main


def start():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    start()
