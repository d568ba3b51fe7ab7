import os

from dotenv import load_dotenv

load_dotenv()


def _threads_default():
    return os.cpu_count() or 1


class Config:
    SEED = int(os.getenv('KC_SEED', '7'))
    OUTPUT_DIR = os.getenv('KC_OUTPUT_DIR', 'runs/latest')
    THREADS = int(os.getenv('KC_THREADS', str(_threads_default())))
    LOG_LEVEL = os.getenv('KC_LOG_LEVEL', 'INFO')

    # Second KC step: high-risk indoor contact scenario
    BETA = float(os.getenv('KC_BETA', '0.01'))
    TAU = float(os.getenv('KC_TAU', '0.2'))

    DIMENSIONS = int(os.getenv('KC_DIMENSIONS', '16'))
    TOP_K = int(os.getenv('KC_TOP_K', '10'))
    SEED_COUNT = int(os.getenv('KC_SEED_COUNT', '5'))

    # Synthetic office defaults
    SYNTHETIC_PEOPLE = int(os.getenv('KC_SYNTHETIC_PEOPLE', '100'))
    SYNTHETIC_DEPARTMENTS = int(os.getenv('KC_SYNTHETIC_DEPARTMENTS', '5'))
    SYNTHETIC_TIMESTAMPS = int(os.getenv('KC_SYNTHETIC_TIMESTAMPS', '200'))
    SYNTHETIC_EVENT_RATE = float(os.getenv('KC_SYNTHETIC_EVENT_RATE', '3.0'))


class TestConfig(Config):
    __test__ = False

    SEED = 7
    THREADS = 1
    LOG_LEVEL = 'WARNING'
    SYNTHETIC_PEOPLE = 30
    SYNTHETIC_DEPARTMENTS = 3
    SYNTHETIC_TIMESTAMPS = 40
    SYNTHETIC_EVENT_RATE = 2.0
