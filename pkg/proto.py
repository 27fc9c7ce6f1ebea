"""Scratch prototype: operator-level FFT synthesis + verification. NOT part of the package."""
import numpy as np, itertools
import numpy.linalg as la

w = np.exp(2j*np.pi/3)
eta = (1+1j)/2
I1 = np.eye(1, dtype=complex)
I2 = np.eye(2, dtype=complex)
I3 = np.eye(3, dtype=complex)
I4 = np.eye(4, dtype=complex)
J = np.array([[0,1],[-1,0]], dtype=complex)
K = np.array([[1j,0],[0,-1j]], dtype=complex)
U = np.array([[-eta,-eta],[np.conj(eta),-np.conj(eta)]], dtype=complex)
T = np.array([[1,-1j],[-1j,1]], dtype=complex)/np.sqrt(2)
CHI = np.array([[0,1,0],[0,0,1],[1,0,0]], dtype=complex)      # printed clock-shift
CHI_INV = CHI.conj().T
X12 = np.array([[1,0,0],[0,0,1],[0,1,0]], dtype=complex)
C3 = np.diag([1,w,w**2]).astype(complex)
H3 = np.array([[1,1,1],[1,w,w**2],[1,w**2,w]], dtype=complex)/np.sqrt(3)
V = -1j*H3
X2 = np.array([[0,1],[1,0]], dtype=complex)
D_J = np.diag([1,-1,-1]).astype(complex)   # fixed rho7 j-image
D_K = np.diag([-1,1,-1]).astype(complex)   # fixed rho7 k-image
JP1 = np.block([[J, np.zeros((2,1))],[np.zeros((1,2)), np.ones((1,1))]]).astype(complex)

def mp(M, k): return np.linalg.matrix_power(M, k)

GROUPS = {}
def defgroup(name, gens, bounds, sub=None, tvec=None):
    elems = list(itertools.product(*[range(b) for b in bounds]))
    mats = []
    for e in elems:
        M = np.eye(gens[0].shape[0], dtype=complex)
        for x, g in zip(e, gens):
            M = M @ mp(g, x)
        mats.append(M)
    key = lambda M: tuple(np.round(M, 6).ravel().tolist())
    lut = {key(M): i for i, M in enumerate(mats)}
    assert len(lut) == len(elems)
    mul = np.zeros((len(elems), len(elems)), dtype=int)
    for i in range(len(elems)):
        for j in range(len(elems)):
            mul[i, j] = lut[key(mats[i] @ mats[j])]
    GROUPS[name] = dict(elems=elems, mats=mats, mul=mul, order=len(elems),
                        sub=sub, tvec=tvec, lut=lut, keyf=key)
    return GROUPS[name]

defgroup("Z2", [-I2], (2,))
defgroup("Z4", [-I2, J], (2,2), sub="Z2")
defgroup("Q8", [-I2, J, K], (2,2,2), sub="Z4")
defgroup("BT", [-I2, J, K, U], (2,2,2,3), sub="Q8")
defgroup("BO", [-I2, J, K, U, T], (2,2,2,3,2), sub="BT")
defgroup("Z3xZ3", [w*I3, C3], (3,3))
defgroup("D27", [w*I3, C3, CHI], (3,3,3), sub="Z3xZ3")
defgroup("D54", [w*I3, C3, CHI, V@V], (3,3,3,2), sub="D27")
defgroup("S36x3", [w*I3, C3, CHI, V@V, V], (3,3,3,2,2), sub="D54")

def m1(x): return np.array([[x]], dtype=complex)

# irrep tables: label -> list of generator images (same generator order as group)
IRREPS = {
  "Z2": [("x1",[m1(1)]), ("x2",[m1(-1)])],
  "Z4": [("i0",[m1(1),m1(1)]), ("i1",[m1(-1),m1(1j)]), ("i2",[m1(1),m1(-1)]), ("i3",[m1(-1),m1(-1j)])],
  "Q8": [("x1",[m1(1)]*3), ("x2",[m1(1),m1(-1),m1(1)]), ("x3",[m1(1),m1(1),m1(-1)]),
         ("x4",[m1(1),m1(-1),m1(-1)]), ("x5",[-I2,J,K])],
  "BT": [("r1",[m1(1)]*4), ("r2",[m1(1)]*3+[m1(w)]), ("r3",[m1(1)]*3+[m1(w**2)]),
         ("r4",[-I2,J,K,U]), ("r5",[-I2,J,K,w*U]), ("r6",[-I2,J,K,w**2*U]),
         ("r7",[I3,D_J,D_K,CHI])],
  "BO": None,  # built below
  "Z3xZ3": [(f"c{3*a+b+1}", [m1(w**a), m1(w**b)]) for a in range(3) for b in range(3)],
  "D27": [(f"x{1+q+3*r}", [m1(1), m1(w**q), m1(w**r)]) for r in range(3) for q in range(3)]
         + [("x10",[w*I3, np.diag([1,w,w**2]).astype(complex), CHI]),
            ("x11",[w**2*I3, np.diag([1,w**2,w]).astype(complex), CHI])],
  "D54": [("b1",[m1(1)]*4), ("b2",[m1(1)]*3+[m1(-1)]),
          ("b3",[I2, np.diag([w,w**2]).astype(complex), I2, X2]),
          ("b4",[I2, I2, np.diag([w,w**2]).astype(complex), X2]),
          ("b5",[I2, np.diag([w,w**2]).astype(complex), np.diag([w,w**2]).astype(complex), X2]),
          ("b6",[I2, np.diag([w,w**2]).astype(complex), np.diag([w**2,w]).astype(complex), X2]),
          ("b7",[w*I3, np.diag([1,w,w**2]).astype(complex), CHI, -X12]),
          ("b8",[w**2*I3, np.diag([1,w**2,w]).astype(complex), CHI, -X12]),
          ("b9",[w*I3, np.diag([1,w,w**2]).astype(complex), CHI, X12]),
          ("b10",[w**2*I3, np.diag([1,w**2,w]).astype(complex), CHI, X12])],
  "S36x3": [("r1",[m1(1)]*4), ("r2",[m1(1)]*3+[m1(1j)]), ("r3",[m1(1)]*3+[m1(-1)]),
            ("r4",[m1(1)]*3+[m1(-1j)]),
            ("r5",[w*I3, C3, CHI, -1j*H3]), ("r6",[w*I3, C3, CHI, H3]),
            ("r7",[w*I3, C3, CHI, 1j*H3]), ("r8",[w*I3, C3, CHI, -H3]),
            ("r9",[w**2*I3, C3.conj(), CHI, (-1j*H3).conj()]),
            ("r10",[w**2*I3, C3.conj(), CHI, H3.conj()]),
            ("r11",[w**2*I3, C3.conj(), CHI, (1j*H3).conj()]),
            ("r12",[w**2*I3, C3.conj(), CHI, (-H3).conj()]),
            ("r13",[I4, np.diag([1,w,1,w**2]).astype(complex), np.diag([w,1,w**2,1]).astype(complex),
                    np.array([[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,0,0,0]],dtype=complex)]),
            ("r14",[I4, np.diag([w,w,w**2,w**2]).astype(complex), np.diag([w,w**2,w**2,w]).astype(complex),
                    np.array([[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,0,0,0]],dtype=complex)])],
}

# BO irreps: rho8 via induction from BT r5
def build_bo():
    G = GROUPS["BO"]; H = GROUPS["BT"]
    r5 = [-I2, J, K, w*U]
    def r5_of(e):
        M = I2.copy()
        for x, g in zip(e, r5): M = M @ mp(g, x)
        return M
    def ind(gmat):
        out = np.zeros((4,4), dtype=complex)
        for x in range(2):
            for y in range(2):
                cand = mp(T,x) @ gmat @ la.inv(mp(T,y))
                k = H["keyf"](cand)
                if k in H["lut"]:
                    e = H["elems"][H["lut"][k]]
                    out[2*x:2*x+2, 2*y:2*y+2] = r5_of(e)
        return out
    r8 = [ind(-I2), ind(J), ind(K), ind(U), ind(T)]
    IRREPS["BO"] = [
      ("b1",[m1(1)]*5), ("b2",[m1(1)]*4+[m1(-1)]),
      ("b3",[I2,I2,I2,np.diag([w**2,w]).astype(complex),X2]),
      ("b4",[-I2,J,K,U,T]), ("b5",[-I2,J,K,U,-T]),
      ("b6",[I3,D_J,D_K,CHI,-JP1]), ("b7",[I3,D_J,D_K,CHI,JP1]),
      ("b8",r8)]
build_bo()

def irrep_mats(gname):
    """label -> dict elem_index -> matrix"""
    G = GROUPS[gname]
    out = {}
    for label, imgs in IRREPS[gname]:
        if gname == "S36x3" and len(imgs) == 4:
            imgs = imgs[:3] + [imgs[3] @ imgs[3], imgs[3]]
        mats = []
        for e in G["elems"]:
            M = np.eye(imgs[0].shape[0], dtype=complex)
            for x, g in zip(e, imgs):
                M = M @ mp(g, x)
            mats.append(M)
        out[label] = mats
    return out

def oracle(gname):
    G = GROUPS[gname]; n = G["order"]
    reps = irrep_mats(gname)
    F = np.zeros((n, n), dtype=complex)
    row = 0
    blocks = {}
    for label, _ in IRREPS[gname]:
        d = reps[label][0].shape[0]
        blocks[label] = list(range(row, row + d*d))
        for i in range(d):
            for j in range(d):
                for gidx in range(n):
                    F[row, gidx] = np.sqrt(d/n) * reps[label][gidx][i, j]
                row += 1
    return F, blocks

def Lreg(gname, gidx):
    G = GROUPS[gname]; n = G["order"]
    P = np.zeros((n, n))
    for h in range(n):
        P[G["mul"][gidx, h], h] = 1
    return P

def verify(F, gname, blocks_expected, tol=1e-9, verbose=True):
    """blocks_expected: dict label -> state list (the assignment to validate)."""
    G = GROUPS[gname]; n = G["order"]
    reps = irrep_mats(gname)
    assert np.allclose(F @ F.conj().T, np.eye(n), atol=1e-9), "not unitary"
    # support-union over generators
    ngen = len(G["elems"][0])
    genidx = [G["lut"][G["keyf"](mp(g,1) if False else None)] for g in []]  # unused
    gens = []
    for i in range(ngen):
        t = tuple(1 if k==i else 0 for k in range(ngen))
        gens.append(G["elems"].index(t))
    supp = np.zeros((n, n), dtype=bool)
    for gi in gens:
        B = F @ Lreg(gname, gi) @ F.conj().T
        supp |= np.abs(B) > 1e-7
    # connected components
    import scipy.sparse.csgraph as csg
    import scipy.sparse as sp
    ncomp, labels = csg.connected_components(sp.csr_matrix(supp | supp.T), directed=False)
    comps = [sorted(np.where(labels==c)[0].tolist()) for c in range(ncomp)]
    comps.sort()
    # refinement: each component must sit inside exactly one expected block
    state2block = {}
    for lab, states in blocks_expected.items():
        for s in states: state2block[s] = lab
    ok_part = all(len({state2block[s] for s in comp}) == 1 for comp in comps)
    # span check per expected block vs oracle
    Fo, ob = oracle(gname)
    ok_span = True
    for label, states in blocks_expected.items():
        P1 = F[states].conj().T @ F[states]
        P2 = Fo[ob[label]].conj().T @ Fo[ob[label]]
        if not np.allclose(P1, P2, atol=1e-8):
            ok_span = False
            if verbose: print(f"  span FAIL {label}")
    # off-block residual over all g
    mask = np.zeros((n,n), dtype=bool)
    for states in blocks_expected.values():
        ix = np.ix_(states, states)
        mask[ix] = True
    worst = 0.0
    for gi in range(n):
        B = F @ Lreg(gname, gi) @ F.conj().T
        worst = max(worst, np.abs(B[~mask]).max())
    if verbose:
        print(f"  partition {'OK' if ok_part else 'FAIL'}; span {'OK' if ok_span else 'FAIL'}; offblock {worst:.2e}")
    return ok_part and ok_span and worst < tol

# ---------- assignments ----------
ASSIGN = {}
ASSIGN["Z2"] = {"x1":[0], "x2":[1]}
ASSIGN["Z4"] = {"i0":[0], "i2":[1], "i1":[2], "i3":[3]}
ASSIGN["Q8"] = {"x1":[0], "x3":[1], "x2":[2], "x4":[3], "x5":[4,5,6,7]}
ASSIGN["BT"] = {"r1":[0], "r2":[1], "r3":[2], "r7":list(range(3,12)),
                "r4":[12,15,18,21], "r5":[13,16,19,22], "r6":[14,17,20,23]}
ASSIGN["BO"] = {"b1":[0],"b2":[1],"b3":[2,3,4,5],
                "b6":[2*s for s in range(3,12)] and None, }  # fill programmatically below
def bo_assign():
    # m48 = 2*m24 + e ; mu-label on e-wire after H
    A = {}
    A["b1"] = [0]; A["b2"] = [1]
    A["b3"] = [2,3,4,5]                      # (rho2,rho3) orbit sector
    A["b6"] = None; A["b7"] = None
    # rho7 extendable: states {3..11}x{e}: mu=0 -> image +JP1? knob; try b7 at mu=0 (t-> +JP1) and b6 at mu=1
    A["b7"] = [2*s+0 for s in range(3,12)]
    A["b6"] = [2*s+1 for s in range(3,12)]
    A["b4"] = [2*s+0 for s in (12,15,18,21)]
    A["b5"] = [2*s+1 for s in (12,15,18,21)]
    A["b8"] = sorted([2*s+e for s in (13,16,19,22,14,17,20,23) for e in range(2)])
    return A
ASSIGN["BO"] = bo_assign()
ASSIGN["Z3xZ3"] = {f"c{3*a+b+1}":[3*a+b] for a in range(3) for b in range(3)}
ASSIGN["D27"] = {**{f"x{1+q+3*r}":[3*q+r] for q in range(3) for r in range(3)},
                 "x10":list(range(9,18)), "x11":list(range(18,27))}
def d54_assign():
    A = {}
    A["b1"]=[0]; A["b2"]=[1]
    A["b4"]=[2,3,4,5]        # {x4,x7} pair
    A["b3"]=[6,7,12,13]      # {x2,x3}
    A["b5"]=[8,9,16,17]      # {x5,x9}
    A["b6"]=[10,11,14,15]    # {x6,x8}
    # x10 extendable, twiddle image X12 at mu=0 => b9 ; -X12 at mu=1 => b7
    A["b9"]=[2*s+0 for s in range(9,18)]
    A["b7"]=[2*s+1 for s in range(9,18)]
    # x11 with kickback -1 per s: effective image -X12 at mu=0 => b8 ; +X12 at mu=1 => b10
    A["b10"]=[2*s+0 for s in range(18,27)]
    A["b8"]=[2*s+1 for s in range(18,27)]
    return A
ASSIGN["D54"] = d54_assign()
def s36_assign():
    A = {}
    A["r1"]=[0]; A["r3"]=[1]; A["r2"]=[2]; A["r4"]=[3]
    A["r13"]=sorted([2*s+t for s in (2,3,4,5,6,7,12,13) for t in range(2)])
    A["r14"]=sorted([2*s+t for s in (8,9,16,17,10,11,14,15) for t in range(2)])
    # b9 at states 2*(18..35)+t? D54 states: b9 = m54 in {2*s} s in 9..17 ... careful:
    # S states = 2*m54 + t. 3d sectors of D54 (m54): b9: evens of 2*(9..17)+mu ... let's recompute:
    # D54 m54 states for b9: [2*s for s in range(9,18)] = 18,20,...,34 ; b7: odds 19..35
    # b8: [2*s for s in range(18,27)] = 36..52 even; b10: odds 37..53
    # Sigma twiddle on p-hat=1 sector: base right-mult H3 on bhat, phase (-i)^t on (p1, mu=1)
    # extensions: b9 (V^2 -> X12): images {H3,-H3} -> mu'=0: r6? ; b7: {±iH3}
    # assignment: block = (t-wire mu', d54-block states)
    def ext(states, mu):  return sorted([2*s+mu for s in states])
    b9s = [2*s for s in range(9,18)]; b7s=[2*s+1 for s in range(9,18)]
    b10s = [2*s for s in range(18,27)]; b8s=[2*s+1 for s in range(18,27)]
    # knob guesses: r6 = (b9, mu0)? r8 = (b9, mu1)? r5/r7 from b7; r9..r12 from b8/b10
    A["r6"]=ext(b9s,0); A["r8"]=ext(b9s,1)
    A["r5"]=ext(b7s,0); A["r7"]=ext(b7s,1)
    A["r9"]=ext(b8s,0); A["r11"]=ext(b8s,1)
    A["r10"]=ext(b10s,0); A["r12"]=ext(b10s,1)
    return A
ASSIGN["S36x3"] = s36_assign()

# ---------- stage operators ----------
def controlled_T(m, Tm):
    nH = Tm.shape[0]
    out = np.zeros((nH*m, nH*m), dtype=complex)
    for x in range(m):
        Tx = mp(Tm, x)
        for i in range(nH):
            for j in range(nH):
                out[i*m+x, j*m+x] = Tx[i, j]
    return out

def dft_stage(m, nH):
    if m == 2: D = np.array([[1,1],[1,-1]],dtype=complex)/np.sqrt(2)
    else: D = np.array([[w**(a*b) for b in range(m)] for a in range(m)],dtype=complex)/np.sqrt(m)
    out = np.zeros((nH*m, nH*m), dtype=complex)
    for i in range(nH):
        out[np.ix_([i*m+x for x in range(m)], [i*m+x for x in range(m)])] = D
    return out

def subfft_stage(m, FH):
    nH = FH.shape[0]
    out = np.zeros((nH*m, nH*m), dtype=complex)
    for x in range(m):
        out[np.ix_([i*m+x for i in range(nH)], [j*m+x for j in range(nH)])] = FH
    return out

def diag_stage(m, phi):
    nH = len(phi)
    d = np.ones(nH*m, dtype=complex)
    for x in range(m):
        for i in range(nH):
            d[i*m+x] = phi[i]**x
    return np.diag(d)

def blockperm(n, cycles_with_phase):
    """cycles_with_phase: list of (src,dst,amp) entries"""
    M = np.eye(n, dtype=complex)
    tmp = np.zeros((n,n), dtype=complex)
    touched = set()
    for (src,dst,amp) in cycles_with_phase:
        touched.add(src)
    for (src,dst,amp) in cycles_with_phase:
        tmp[dst,src] = amp
    for i in range(n):
        if i not in touched: tmp[i,i]=1
    return tmp

# twiddles
def T_Z4(): return np.diag([1,1j]).astype(complex)
def T_Q8():
    M = np.eye(4, dtype=complex)
    M[2:,2:] = np.array([[0,1],[-1,0]])
    return M
def T_BT():
    M = np.zeros((8,8),dtype=complex); M[0,0]=1
    M[np.ix_([1,2,3],[1,2,3])] = CHI
    CZ = np.diag([1,1,1,-1]).astype(complex)
    M[np.ix_([4,5,6,7],[4,5,6,7])] = CZ @ np.kron(U, I2) @ CZ
    return M
def Phi_BT():
    return np.array([1,1,w,w**2,1,1,1,1],dtype=complex)
def T_BO(variant="generic"):
    M = np.zeros((24,24),dtype=complex)
    M[0,0]=1
    M[1,2]=1; M[2,1]=1
    # rho7 block states 3..11, layout l = 3*(m8-1)+d  (m8-major)
    Q = JP1
    M[np.ix_(range(3,12),range(3,12))] = np.kron(Q.T, I3)
    # 2d sector states 12..23, layout l = 3*(m8-4)+d
    blk = np.zeros((12,12),dtype=complex)
    # rho4 (d=0): t2 right-mult on b: l = 3*(2b+c)+0 -> b-major within taking only d=0 slots {0,3,6,9}
    t2i = T.conj().T
    for b1 in range(2):
        for b2 in range(2):
            for c in range(2):
                blk[3*(2*b1+c)+0, 3*(2*b2+c)+0] = t2i.T[b1,b2]
    # rho5/rho6 orbit: shift d=1 -> d=2, wrap with right-mult rho5(t^2)=JK=-iX on b
    JKm = K@J
    for b in range(2):
        for c in range(2):
            blk[3*(2*b+c)+2, 3*(2*b+c)+1] = 1.0     # d=1 -> d=2
    for b1 in range(2):
        for b2 in range(2):
            for c in range(2):
                blk[3*(2*b1+c)+1, 3*(2*b2+c)+2] = JKm[b1,b2]  # knob: JK vs JK.T on wrap
    M[np.ix_(range(12,24),range(12,24))] = blk
    return M
def Phi_BO():
    d = np.ones(24,dtype=complex)
    d[2] = -1
    for s in (14,17,20,23): d[s] = -1   # d=2 at a=1 (rho6)
    return d
def T_D27():
    M = np.eye(9,dtype=complex)
    M[np.ix_([3,4,5],[3,4,5])] = CHI_INV
    M[np.ix_([6,7,8],[6,7,8])] = CHI
    return M
def Phi_D27():
    return np.array([1,1,1, 1,w**2,w, 1,w,w**2], dtype=complex)
def T_D54():
    M = np.zeros((27,27),dtype=complex)
    pairs = [(1,2),(3,6),(4,8),(5,7)]
    fixed = [0]
    for a,b in pairs:
        M[a,b]=1; M[b,a]=1
    M[0,0]=1
    # x10/x11: right-mult X12 on bhat: states 9+3b+x : swap b=1<->2 blocks
    for base in (9,18):
        for x in range(3):
            M[base+0*3+x, base+0*3+x] = 1
            M[base+1*3+x, base+2*3+x] = 1
            M[base+2*3+x, base+1*3+x] = 1
    return M
def Phi_D54():
    d = np.ones(27,dtype=complex)
    d[2]=-1
    for s in (6,7,8): d[s]=-1
    for s in range(18,27): d[s]=-1
    return d
def T_S36():
    M = np.zeros((54,54),dtype=complex)
    M[0,0]=1; M[1,1]=1j
    cycles = [(2,3,4,5),(6,7,12,13),(8,9,16,17),(10,11,14,15)]
    for cyc in cycles:
        for i in range(4):
            M[cyc[(i+1)%4], cyc[i]] = 1
    # p-hat=1 sector: states 18+6b+2x+mu (m54=2*m27+mu, m27=9+3b+x)
    # twiddle: right-mult on bhat by H3 ; phase -i on mu=1
    for b1 in range(3):
        for b2 in range(3):
            for x in range(3):
                for mu in range(2):
                    amp = H3[b1,b2] * ((-1j) if mu==1 else 1)
                    M[18+6*b1+2*x+mu, 18+6*b2+2*x+mu] = amp
    # p-hat=2: base iH3* with extra (-i) on mu=1
    H3c = H3.conj()
    for b1 in range(3):
        for b2 in range(3):
            for x in range(3):
                for mu in range(2):
                    amp = H3c[b1,b2] * ((1j) if mu==1 else 1)
                    M[36+6*b1+2*x+mu, 36+6*b2+2*x+mu] = amp
    return M
def Phi_S36():
    d = np.ones(54,dtype=complex)
    for s in range(54):
        if s % 2 == 1: d[s] = -1
    return d

STEPS = {
  "Z4": ("Z2", 2, T_Z4, None),
  "Q8": ("Z4", 2, T_Q8, None),
  "BT": ("Q8", 3, T_BT, Phi_BT),
  "BO": ("BT", 2, T_BO, Phi_BO),
  "D27": ("Z3xZ3", 3, T_D27, Phi_D27),
  "D54": ("D27", 2, T_D54, Phi_D54),
  "S36x3": ("D54", 2, T_S36, Phi_S36),
}

def synth(gname):
    if gname == "Z2":
        return np.array([[1,1],[1,-1]],dtype=complex)/np.sqrt(2)
    if gname == "Z3xZ3":
        return np.kron(H3, H3)
    sub, m, Tf, Pf = STEPS[gname]
    FH = synth(sub)
    nH = FH.shape[0]
    F = subfft_stage(m, FH)
    F = controlled_T(m, Tf()) @ F
    F = dft_stage(m, nH) @ F
    if Pf is not None:
        F = diag_stage(m, Pf()) @ F
    return F

if __name__ == "__main__":
    for g in ["Z2","Z4","Q8","BT","BO","Z3xZ3","D27","D54","S36x3"]:
        Fo, ob = oracle(g)
        print(g, "oracle:", end=" ")
        okO = verify(Fo, g, ob, verbose=False)
        print("OK" if okO else "FAIL", end="; synth: ")
        F = synth(g)
        ok = verify(F, g, ASSIGN[g])
