"""arcmodel core module.

Triangulated surfaces, normal coordinates, intersection numbers, Dehn twists,
subsurface projection and the model-ball builder.
"""
