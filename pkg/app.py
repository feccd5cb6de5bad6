import logging
import sys

from dotenv import load_dotenv

load_dotenv()  # This loads the .env file

from cli import run

# Logs go to standard error so standard output stays byte-deterministic
logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=logging.WARNING,
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    """Main application entry point"""
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except Exception as e:
        logger.error(f"Application error: {e}")
        raise


if __name__ == "__main__":
    sys.exit(main())
