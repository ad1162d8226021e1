/*
 * Differential-test harness for rtl2c translation units.
 *
 *   rtl_harness MNEMONIC < snapshot > post-state
 *
 * Reads a snapshot (GPR / MEM / FIELD lines) on stdin, looks the mnemonic up
 * in rtl_registry, runs it, and prints the post-state GPR and MEM lines.
 *
 * Exit status: 0 ok, 2 unknown mnemonic, 3 malformed snapshot, 4 runtime
 * fault, 64 usage.
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "power_rtl_runtime.h"

#define HARNESS_MAX_FIELDS 64
#define HARNESS_LINE_MAX 4096

extern const rtl_registry_entry rtl_registry[];

void rtl_fault(int code)
{
    fprintf(stderr, "rtl_harness: runtime fault %d\n", code);
    exit(4);
}

static void malformed(unsigned long line, const char *why)
{
    fprintf(stderr, "rtl_harness: malformed snapshot at line %lu: %s\n", line, why);
    exit(3);
}

/* Parse 1..16 hex digits spanning exactly [s, end). */
static int parse_hex(const char *s, const char *end, uint64_t *out)
{
    uint64_t v = 0;
    size_t n = (size_t)(end - s);
    if (n == 0 || n > 16) {
        return 0;
    }
    for (; s < end; s++) {
        unsigned d;
        char c = *s;
        if (c >= '0' && c <= '9') {
            d = (unsigned)(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            d = (unsigned)(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            d = (unsigned)(c - 'A' + 10);
        } else {
            return 0;
        }
        v = (v << 4) | d;
    }
    *out = v;
    return 1;
}

static int page_order(const void *a, const void *b)
{
    const rtl_page *pa = *(const rtl_page *const *)a;
    const rtl_page *pb = *(const rtl_page *const *)b;
    return pa->base < pb->base ? -1 : pa->base > pb->base;
}

static void print_state(const rtl_state *st)
{
    rtl_page **pages;
    size_t i, n = 0;
    unsigned off;
    for (i = 0; i < 32; i++) {
        printf("GPR%u=%016llx\n", (unsigned)i, (unsigned long long)st->gpr[i]);
    }
    pages = (rtl_page **)malloc((st->count ? st->count : 1) * sizeof *pages);
    if (!pages) {
        rtl_fault(RTL_FAULT_OUT_OF_MEMORY);
        return;
    }
    for (i = 0; i < st->capacity; i++) {
        if (st->pages[i]) {
            pages[n++] = st->pages[i];
        }
    }
    qsort(pages, n, sizeof *pages, page_order);
    for (i = 0; i < n; i++) {
        for (off = 0; off < RTL_PAGE_SIZE; off++) {
            if (pages[i]->touched[off >> 3] & (1u << (off & 7))) {
                printf("MEM %016llx %02x\n", (unsigned long long)(pages[i]->base + off),
                       (unsigned)pages[i]->bytes[off]);
            }
        }
    }
    free(pages);
}

int main(int argc, char **argv)
{
    const rtl_registry_entry *entry;
    rtl_state st;
    uint64_t fields[HARNESS_MAX_FIELDS];
    int field_seen[HARNESS_MAX_FIELDS];
    int gpr_seen[32];
    char line[HARNESS_LINE_MAX];
    unsigned long line_no = 0;
    unsigned i;

    if (argc != 2) {
        fprintf(stderr, "usage: %s MNEMONIC < snapshot\n", argv[0]);
        return 64;
    }
    for (entry = rtl_registry; entry->mnemonic; entry++) {
        if (strcmp(entry->mnemonic, argv[1]) == 0) {
            break;
        }
    }
    if (!entry->mnemonic) {
        fprintf(stderr, "rtl_harness: unknown mnemonic `%s`\n", argv[1]);
        return 2;
    }
    if (entry->field_count > HARNESS_MAX_FIELDS) {
        fprintf(stderr, "rtl_harness: too many fields for `%s`\n", argv[1]);
        return 3;
    }

    rtl_state_init(&st);
    memset(gpr_seen, 0, sizeof gpr_seen);
    memset(field_seen, 0, sizeof field_seen);
    memset(fields, 0, sizeof fields);

    while (fgets(line, sizeof line, stdin)) {
        size_t len = strlen(line);
        char *end;
        line_no++;
        if (len == sizeof line - 1 && line[len - 1] != '\n') {
            malformed(line_no, "line too long");
        }
        while (len && (line[len - 1] == '\n' || line[len - 1] == '\r')) {
            line[--len] = '\0';
        }
        end = line + len;
        if (len == 0) {
            continue;
        }
        if (strncmp(line, "GPR", 3) == 0) {
            char *eq = strchr(line, '=');
            char *p;
            unsigned idx = 0;
            uint64_t v = 0;
            if (!eq || eq == line + 3 || eq - (line + 3) > 2) {
                malformed(line_no, "bad GPR line");
            }
            for (p = line + 3; p < eq; p++) {
                if (*p < '0' || *p > '9') {
                    malformed(line_no, "bad GPR index");
                }
                idx = idx * 10 + (unsigned)(*p - '0');
            }
            if (idx >= 32 || gpr_seen[idx]) {
                malformed(line_no, "bad or repeated GPR index");
            }
            if (!parse_hex(eq + 1, end, &v)) {
                malformed(line_no, "bad GPR value");
            }
            gpr_seen[idx] = 1;
            st.gpr[idx] = v;
        } else if (strncmp(line, "MEM ", 4) == 0) {
            char *sp = strchr(line + 4, ' ');
            uint64_t addr = 0, byte = 0;
            if (!sp || !parse_hex(line + 4, sp, &addr) || !parse_hex(sp + 1, end, &byte)
                || byte > 0xFF) {
                malformed(line_no, "bad MEM line");
            }
            rtl_store_byte(&st, addr, (uint8_t)byte);
        } else if (strncmp(line, "FIELD ", 6) == 0) {
            char *name = line + 6;
            char *eq = strchr(name, '=');
            uint64_t v = 0;
            if (!eq || !parse_hex(eq + 1, end, &v)) {
                malformed(line_no, "bad FIELD line");
            }
            *eq = '\0';
            for (i = 0; i < entry->field_count; i++) {
                if (strcmp(entry->fields[i].name, name) == 0) {
                    break;
                }
            }
            if (i == entry->field_count || field_seen[i]) {
                malformed(line_no, "unknown or repeated field");
            }
            field_seen[i] = 1;
            fields[i] = v & rtl_low_mask(entry->fields[i].width);
        } else {
            malformed(line_no, "unrecognized line");
        }
    }
    for (i = 0; i < 32; i++) {
        if (!gpr_seen[i]) {
            malformed(line_no + 1, "missing GPR line");
        }
    }
    for (i = 0; i < entry->field_count; i++) {
        if (!field_seen[i]) {
            malformed(line_no + 1, "missing FIELD line");
        }
    }

    entry->fn(&st, fields);
    print_state(&st);
    rtl_state_free(&st);
    return fflush(stdout) == 0 ? 0 : 1;
}
