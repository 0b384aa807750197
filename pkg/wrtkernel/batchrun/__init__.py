from .launch import Launcher, ResourceManager, Task, TaskResult, run_task
