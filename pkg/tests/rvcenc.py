"""Hand-written encoders for 16-bit compressed instructions.

Kept on the test side so the decoder's compressed expansion is checked
against an independent bit-layout implementation. Each function returns a
16-bit word; field legality is the caller's job (tests pass legal values).
"""


def c_addi4spn(rdp, u):
    return (0b000 << 13) | (((u >> 4) & 3) << 11) | (((u >> 6) & 0xF) << 7) \
        | (((u >> 2) & 1) << 6) | (((u >> 3) & 1) << 5) | ((rdp & 7) << 2) | 0b00


def c_fld(rdp, rs1p, u):
    return (0b001 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 6) & 3) << 5) | ((rdp & 7) << 2) | 0b00


def c_lw(rdp, rs1p, u):
    return (0b010 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 2) & 1) << 6) | (((u >> 6) & 1) << 5) | ((rdp & 7) << 2) | 0b00


def c_ld(rdp, rs1p, u):
    return (0b011 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 6) & 3) << 5) | ((rdp & 7) << 2) | 0b00


def c_fsd(rs1p, rs2p, u):
    return (0b101 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 6) & 3) << 5) | ((rs2p & 7) << 2) | 0b00


def c_sw(rs1p, rs2p, u):
    return (0b110 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 2) & 1) << 6) | (((u >> 6) & 1) << 5) | ((rs2p & 7) << 2) | 0b00


def c_sd(rs1p, rs2p, u):
    return (0b111 << 13) | (((u >> 3) & 7) << 10) | ((rs1p & 7) << 7) \
        | (((u >> 6) & 3) << 5) | ((rs2p & 7) << 2) | 0b00


def _ci(f3, rd, imm):
    return (f3 << 13) | (((imm >> 5) & 1) << 12) | ((rd & 31) << 7) \
        | ((imm & 31) << 2) | 0b01


def c_addi(rd, imm):
    return _ci(0b000, rd, imm)


def c_addiw(rd, imm):
    return _ci(0b001, rd, imm)


def c_li(rd, imm):
    return _ci(0b010, rd, imm)


def c_addi16sp(imm):
    return (0b011 << 13) | (((imm >> 9) & 1) << 12) | (2 << 7) \
        | (((imm >> 4) & 1) << 6) | (((imm >> 6) & 1) << 5) \
        | (((imm >> 7) & 3) << 3) | (((imm >> 5) & 1) << 2) | 0b01


def c_lui(rd, imm):
    # imm is the sign-extended addend, a multiple of 4096
    return (0b011 << 13) | (((imm >> 17) & 1) << 12) | ((rd & 31) << 7) \
        | (((imm >> 12) & 31) << 2) | 0b01


def _cb_shift(sub, rdp, sh):
    return (0b100 << 13) | (((sh >> 5) & 1) << 12) | (sub << 10) \
        | ((rdp & 7) << 7) | ((sh & 31) << 2) | 0b01


def c_srli(rdp, sh):
    return _cb_shift(0b00, rdp, sh)


def c_srai(rdp, sh):
    return _cb_shift(0b01, rdp, sh)


def c_andi(rdp, imm):
    return (0b100 << 13) | (((imm >> 5) & 1) << 12) | (0b10 << 10) \
        | ((rdp & 7) << 7) | ((imm & 31) << 2) | 0b01


_CA = {"sub": (0, 0), "xor": (0, 1), "or": (0, 2), "and": (0, 3),
       "subw": (1, 0), "addw": (1, 1)}


def c_arith(name, rdp, rs2p):
    hi, low = _CA[name]
    return (0b100 << 13) | (hi << 12) | (0b11 << 10) | ((rdp & 7) << 7) \
        | (low << 5) | ((rs2p & 7) << 2) | 0b01


def c_j(imm):
    return (0b101 << 13) | (((imm >> 11) & 1) << 12) | (((imm >> 4) & 1) << 11) \
        | (((imm >> 8) & 3) << 9) | (((imm >> 10) & 1) << 8) \
        | (((imm >> 6) & 1) << 7) | (((imm >> 7) & 1) << 6) \
        | (((imm >> 1) & 7) << 3) | (((imm >> 5) & 1) << 2) | 0b01


def _cb_branch(f3, rs1p, imm):
    return (f3 << 13) | (((imm >> 8) & 1) << 12) | (((imm >> 3) & 3) << 10) \
        | ((rs1p & 7) << 7) | (((imm >> 6) & 3) << 5) \
        | (((imm >> 1) & 3) << 3) | (((imm >> 5) & 1) << 2) | 0b01


def c_beqz(rs1p, imm):
    return _cb_branch(0b110, rs1p, imm)


def c_bnez(rs1p, imm):
    return _cb_branch(0b111, rs1p, imm)


def c_slli(rd, sh):
    return (0b000 << 13) | (((sh >> 5) & 1) << 12) | ((rd & 31) << 7) \
        | ((sh & 31) << 2) | 0b10


def c_fldsp(rd, u):
    return (0b001 << 13) | (((u >> 5) & 1) << 12) | ((rd & 31) << 7) \
        | (((u >> 3) & 3) << 5) | (((u >> 6) & 7) << 2) | 0b10


def c_lwsp(rd, u):
    return (0b010 << 13) | (((u >> 5) & 1) << 12) | ((rd & 31) << 7) \
        | (((u >> 2) & 7) << 4) | (((u >> 6) & 3) << 2) | 0b10


def c_ldsp(rd, u):
    return (0b011 << 13) | (((u >> 5) & 1) << 12) | ((rd & 31) << 7) \
        | (((u >> 3) & 3) << 5) | (((u >> 6) & 7) << 2) | 0b10


def c_jr(rs1):
    return (0b1000 << 12) | ((rs1 & 31) << 7) | 0b10


def c_mv(rd, rs2):
    return (0b1000 << 12) | ((rd & 31) << 7) | ((rs2 & 31) << 2) | 0b10


def c_ebreak():
    return 0x9002


def c_jalr(rs1):
    return (0b1001 << 12) | ((rs1 & 31) << 7) | 0b10


def c_add(rd, rs2):
    return (0b1001 << 12) | ((rd & 31) << 7) | ((rs2 & 31) << 2) | 0b10


def c_fsdsp(rs2, u):
    return (0b101 << 13) | (((u >> 3) & 7) << 10) | (((u >> 6) & 7) << 7) \
        | ((rs2 & 31) << 2) | 0b10


def c_swsp(rs2, u):
    return (0b110 << 13) | (((u >> 2) & 0xF) << 9) | (((u >> 6) & 3) << 7) \
        | ((rs2 & 31) << 2) | 0b10


def c_sdsp(rs2, u):
    return (0b111 << 13) | (((u >> 3) & 7) << 10) | (((u >> 6) & 7) << 7) \
        | ((rs2 & 31) << 2) | 0b10
