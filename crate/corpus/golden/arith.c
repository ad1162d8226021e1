/* Generated by rtl2c from arith.rtl. Do not edit. */
#include "power_rtl_runtime.h"

/* add(RT:5, RA:5, RB:5) */
void rtl_add(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    rtl_gpr_write(st, RT, rtl_gpr_read(st, RA) + rtl_gpr_read(st, RB));
}

/* subf(RT:5, RA:5, RB:5) */
void rtl_subf(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    rtl_gpr_write(st, RT, (rtl_not(rtl_gpr_read(st, RA), 64) + rtl_gpr_read(st, RB)) + UINT64_C(1));
}

/* mulld(RT:5, RA:5, RB:5) */
void rtl_mulld(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    rtl_gpr_write(st, RT, rtl_gpr_read(st, RA) * rtl_gpr_read(st, RB));
}

/* divdu(RT:5, RA:5, RB:5) */
void rtl_divdu(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    if (rtl_gpr_read(st, RB) == UINT64_C(0)) {
        rtl_gpr_write(st, RT, UINT64_C(0));
    } else {
        rtl_gpr_write(st, RT, rtl_divu(rtl_gpr_read(st, RA), rtl_gpr_read(st, RB)));
    }
}

/* modud(RT:5, RA:5, RB:5) */
void rtl_modud(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t RB)
{
    if (rtl_gpr_read(st, RB) == UINT64_C(0)) {
        rtl_gpr_write(st, RT, UINT64_C(0));
    } else {
        rtl_gpr_write(st, RT, rtl_modu(rtl_gpr_read(st, RA), rtl_gpr_read(st, RB)));
    }
}

/* neg(RT:5, RA:5) */
void rtl_neg(rtl_state *st, uint64_t RT, uint64_t RA)
{
    rtl_gpr_write(st, RT, UINT64_C(0) - rtl_gpr_read(st, RA));
}

/* nor(RS:5, RA:5, RB:5) */
void rtl_nor(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t RB)
{
    rtl_gpr_write(st, RA, rtl_not(rtl_gpr_read(st, RS) | rtl_gpr_read(st, RB), 64));
}

/* and.(RS:5, RA:5, RB:5) */
void rtl_and_rc(rtl_state *st, uint64_t RS, uint64_t RA, uint64_t RB)
{
    uint64_t r = 0;
    uint64_t cr = 0;

    r = rtl_gpr_read(st, RS) & rtl_gpr_read(st, RB);
    rtl_gpr_write(st, RA, r);
    if (r == UINT64_C(0)) {
        cr = UINT64_C(0x2);
    } else if (rtl_bit_slice(r, UINT64_C(0), UINT64_C(0), 64) == UINT64_C(1)) {
        cr = UINT64_C(0x8);
    } else {
        cr = UINT64_C(0x4);
    }
    rtl_gpr_write(st, UINT64_C(0), cr);
}

/* extsb(RS:5, RA:5) */
void rtl_extsb(rtl_state *st, uint64_t RS, uint64_t RA)
{
    rtl_gpr_write(st, RA, rtl_exts(rtl_bit_slice(rtl_gpr_read(st, RS), UINT64_C(56), UINT64_C(63), 64), 8));
}

/* addi(RT:5, RA:5, SI:16 signed) */
void rtl_addi(rtl_state *st, uint64_t RT, uint64_t RA, uint64_t SI)
{
    if (RA == UINT64_C(0)) {
        rtl_gpr_write(st, RT, rtl_exts(SI, 16));
    } else {
        rtl_gpr_write(st, RT, rtl_gpr_read(st, RA) + rtl_exts(SI, 16));
    }
}

static const rtl_field_desc rtl_add__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_add__entry(rtl_state *st, const uint64_t *f)
{
    rtl_add(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_subf__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_subf__entry(rtl_state *st, const uint64_t *f)
{
    rtl_subf(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_mulld__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_mulld__entry(rtl_state *st, const uint64_t *f)
{
    rtl_mulld(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_divdu__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_divdu__entry(rtl_state *st, const uint64_t *f)
{
    rtl_divdu(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_modud__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_modud__entry(rtl_state *st, const uint64_t *f)
{
    rtl_modud(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_neg__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
};

static void rtl_neg__entry(rtl_state *st, const uint64_t *f)
{
    rtl_neg(st, f[0], f[1]);
}

static const rtl_field_desc rtl_nor__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_nor__entry(rtl_state *st, const uint64_t *f)
{
    rtl_nor(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_and_rc__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
    {"RB", 5, 0},
};

static void rtl_and_rc__entry(rtl_state *st, const uint64_t *f)
{
    rtl_and_rc(st, f[0], f[1], f[2]);
}

static const rtl_field_desc rtl_extsb__fields[] = {
    {"RS", 5, 0},
    {"RA", 5, 0},
};

static void rtl_extsb__entry(rtl_state *st, const uint64_t *f)
{
    rtl_extsb(st, f[0], f[1]);
}

static const rtl_field_desc rtl_addi__fields[] = {
    {"RT", 5, 0},
    {"RA", 5, 0},
    {"SI", 16, 1},
};

static void rtl_addi__entry(rtl_state *st, const uint64_t *f)
{
    rtl_addi(st, f[0], f[1], f[2]);
}

const rtl_registry_entry rtl_registry[] = {
    {"add", rtl_add__entry, 3, rtl_add__fields},
    {"subf", rtl_subf__entry, 3, rtl_subf__fields},
    {"mulld", rtl_mulld__entry, 3, rtl_mulld__fields},
    {"divdu", rtl_divdu__entry, 3, rtl_divdu__fields},
    {"modud", rtl_modud__entry, 3, rtl_modud__fields},
    {"neg", rtl_neg__entry, 2, rtl_neg__fields},
    {"nor", rtl_nor__entry, 3, rtl_nor__fields},
    {"and.", rtl_and_rc__entry, 3, rtl_and_rc__fields},
    {"extsb", rtl_extsb__entry, 2, rtl_extsb__fields},
    {"addi", rtl_addi__entry, 3, rtl_addi__fields},
    {NULL, NULL, 0, NULL}
};
