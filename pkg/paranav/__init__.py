"""Entry_point that register the Paranav gymnasium environments."""
from gymnasium.envs.registration import register

# Make entry_point version available.
from .version import __version__, __version_tuple__

# Available environments.
# NOTE: CorridorServo-v1 returns a cost in [0, 1] and has no reward threshold.
ENVS = {
    "CorridorServo-v1": {
        "entry_point": "paranav.envs.robotics.corridor_servo.corridor_servo:CorridorServo",
        "max_episode_steps": 5000,
    },
}

for env, val in ENVS.items():
    register(
        id=env,
        entry_point=val["entry_point"],
        reward_threshold=val.get("reward_threshold"),
        max_episode_steps=val["max_episode_steps"]
        if "max_episode_steps" in val
        else None,
    )
