import lensknots as lk

lk.utils.LensknotsSettings.toggle_debug(False)
lk.utils.LensknotsSettings.toggle_rich_locals(False)
