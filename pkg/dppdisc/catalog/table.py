"""dppdisc space table

Families are dicts that map a dimension d to the Jacobi parameters of the
radial measure, the curvature scale kappa and the real dimension, one dict
per row of the classification of compact, connected two-point homogeneous
spaces.

"""
# flake8: noqa

# Spheres S^d
SPHERE = dict(
    name = 'Sphere',
    field = 'real',
    alpha = lambda d: (d - 2) / 2.,
    beta = lambda d: (d - 2) / 2.,
    kappa = 0.5,
    dim_real = lambda d: d,
    ambient = lambda d: d + 1,
    min_d = 1,
)

# Real projective spaces RP^d
REAL_PROJECTIVE = dict(
    name = 'RealProjective',
    field = 'real',
    alpha = lambda d: (d - 2) / 2.,
    beta = lambda d: -0.5,
    kappa = 1.0,
    dim_real = lambda d: d,
    ambient = lambda d: d + 1,
    min_d = 1,
)

# Complex projective spaces CP^d
COMPLEX_PROJECTIVE = dict(
    name = 'ComplexProjective',
    field = 'complex',
    alpha = lambda d: d - 1.,
    beta = lambda d: 0.,
    kappa = 1.0,
    dim_real = lambda d: 2 * d,
    ambient = lambda d: d + 1,
    min_d = 1,
)

# Quaternionic projective spaces HP^d (parameters only)
QUATERNIONIC_PROJECTIVE = dict(
    name = 'QuaternionicProjective',
    field = 'quaternion',
    alpha = lambda d: 2. * d - 1.,
    beta = lambda d: 1.,
    kappa = 1.0,
    dim_real = lambda d: 4 * d,
    ambient = None,
    min_d = 1,
)

# Cayley plane OP^2 (parameters only, d fixed to 2)
OCTONIONIC_PLANE = dict(
    name = 'OctonionicPlane',
    field = 'octonion',
    alpha = lambda d: 7.,
    beta = lambda d: 3.,
    kappa = 1.0,
    dim_real = lambda d: 16,
    ambient = None,
    min_d = 2,
)

FAMILIES = {'s': SPHERE, 'rp': REAL_PROJECTIVE, 'cp': COMPLEX_PROJECTIVE,
            'hp': QUATERNIONIC_PROJECTIVE, 'op': OCTONIONIC_PLANE}
