"""
Poincare disc pictures of tilings and quarter sequences, written as SVG.

A line with pole (l0, l1, l2) is, in the disc, the circle of center
(l1, l2)/l0 and radius 1/|l0| (orthogonal to the unit circle), or a diameter
if l0 = 0.  Edges and lines are drawn as exact arcs of those circles.
"""

import os
import tempfile

import numpy as np
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from matplotlib.patches import Arc, Circle, Polygon

from pentameter.log import get_logger
from pentameter.hyperbolic import mdot, ideal_points_of, to_disc, _cross, _vec
from pentameter.pentagrid import WHITE

COLORS = dict(white='#f4f1e8', black='#8c8c9e', cornucopia='#e0a040', edge='#303030',
              quarter='#c03030', vertex='#2050c0', delta='#208040', chain='#a040a0')

#- below this disc length (about one pixel) an edge is drawn as a segment
_MIN_ARC = 1e-3
#- above this radius an arc is drawn as a segment
_MAX_RADIUS = 1e4


def _setup(width_px, height_px):
    matplotlib.rcParams['svg.hashsalt'] = 'pentameter'
    matplotlib.rcParams['svg.fonttype'] = 'none'
    fig = plt.figure(figsize=(width_px/100., height_px/100.), dpi=100)
    ax = fig.add_axes([0, 0, 1, 1])
    ax.set_xlim(-1.02, 1.02)
    ax.set_ylim(-1.02, 1.02)
    ax.set_aspect('equal')
    ax.axis('off')
    ax.add_patch(Circle((0, 0), 1., fill=False, lw=1., ec=COLORS['edge']))
    return fig, ax

def _save(fig, filename):
    #- rendered next to filename, then renamed onto it
    dirname = os.path.dirname(os.path.abspath(filename))
    fd, tmpname = tempfile.mkstemp(dir=dirname, prefix='.tmp-', suffix='.svg')
    os.close(fd)
    try :
        fig.savefig(tmpname, format='svg', metadata={'Date': None})
        os.replace(tmpname, filename)
    except Exception :
        if os.path.isfile(tmpname) :
            os.unlink(tmpname)
        raise
    finally :
        plt.close(fig)
    get_logger().debug("wrote {}".format(filename))


def geodesic_circle(p, q):
    """
    Center and radius of the circle carrying the geodesic through the
    hyperboloid points (or ends) p and q, None for a diameter.
    """
    pole = _cross(p, q)
    if abs(pole[0]) <= 1e-12*np.max(np.abs(pole)) :
        return None
    return pole[1:]/pole[0], 1./abs(pole[0]/np.sqrt(abs(mdot(pole, pole))))

def geodesic_patch(p, q, **kwargs):
    """
    matplotlib artist for the geodesic segment from p to q, an Arc or a Line2D.
    """
    a = to_disc(p)
    b = to_disc(q)
    circle = geodesic_circle(p, q)
    if circle is None or circle[1] > _MAX_RADIUS or np.hypot(*(a-b)) < _MIN_ARC :
        return plt.Line2D([a[0], b[0]], [a[1], b[1]], **kwargs)
    center, radius = circle
    t1 = np.degrees(np.arctan2(a[1]-center[1], a[0]-center[0]))
    t2 = np.degrees(np.arctan2(b[1]-center[1], b[0]-center[0]))
    if (t2-t1) % 360. > 180. :
        t1, t2 = t2, t1
    return Arc(center, 2*radius, 2*radius, theta1=t1, theta2=t2, **kwargs)

def _add(ax, artist):
    if isinstance(artist, plt.Line2D) :
        ax.add_line(artist)
    else :
        ax.add_patch(artist)

def _fill(ax, vertices, color, nsteps=8):
    #- polygon through points sampled along the edges, for filling only
    pts = []
    for i in range(len(vertices)) :
        u, v = vertices[i], vertices[(i+1) % len(vertices)]
        for t in np.linspace(0., 1., nsteps, endpoint=False) :
            x = (1-t)*u + t*v
            pts.append(to_disc(x/np.sqrt(-mdot(x, x))))
    ax.add_patch(Polygon(np.array(pts), closed=True, fc=color, ec='none', lw=0))

def draw_line(ax, line, color, lw=1.):
    e1, e2 = ideal_points_of(line)
    _add(ax, geodesic_patch(e1.coords, e2.coords, color=color, lw=lw))


def plot_tiling(filename, tiles, width_px=800, height_px=800, quarter=None):
    """
    Tiles coloured by their node color, the pentagons of the root cornucopia
    highlighted, the borders of quarter drawn on top.
    """
    fig, ax = _setup(width_px, height_px)
    for tile in tiles :
        v = tile.pentagon._vertices
        if len(tile.path) > 0 and all(s == 0 for s in tile.path) :
            color = COLORS['cornucopia']
        else :
            color = COLORS['white'] if tile.color == WHITE else COLORS['black']
        _fill(ax, v, color)
        for i in range(5) :
            _add(ax, geodesic_patch(v[i], v[(i+1) % 5], color=COLORS['edge'], lw=0.6))
    if quarter is not None :
        for ray in quarter.borders :
            _add(ax, geodesic_patch(ray.origin.coords, ray.direction.coords,
                                    color=COLORS['quarter'], lw=1.5))
    _save(fig, filename)

def plot_sequence(filename, quarters, lines=(), chain=None, width_px=800, height_px=800):
    """
    Hats and vertices of a quarter sequence, with extra lines (for instance
    the lines the vertices march along) and the boundaries of a chain.
    """
    fig, ax = _setup(width_px, height_px)
    for f in quarters :
        a, s, b = [_vec(p) for p in f.hat]
        if np.max(np.abs(s)) > 1e7 :
            continue
        _add(ax, geodesic_patch(a, s, color=COLORS['quarter'], lw=0.8))
        _add(ax, geodesic_patch(s, b, color=COLORS['quarter'], lw=0.8))
        x, y = to_disc(s)
        ax.plot([x], [y], 'o', ms=3, color=COLORS['vertex'])
    for line in lines :
        draw_line(ax, line, COLORS['delta'], lw=1.2)
    if chain is not None :
        for h in chain :
            draw_line(ax, h.boundary, COLORS['chain'], lw=0.8)
    _save(fig, filename)
