from config.settings import *  # noqa: F401,F403
