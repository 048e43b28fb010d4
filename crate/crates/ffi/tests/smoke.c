#include <stdio.h>
#include <string.h>

#include "sollab.h"

int main(void) {
    const uint32_t parts[] = {1, 4, 13};
    SollabPartition *p = NULL, *q = NULL;
    SollabPsiCase c;
    uint32_t buf[8];
    size_t n = 0;

    if (sollab_partition_new(parts, 3, &p) != SOLLAB_STATUS_OK) return 1;
    if (sollab_psi(p, &q, &c) != SOLLAB_STATUS_OK || c != SOLLAB_PSI_CASE_CASE_II) return 2;
    if (sollab_partition_len(q, &n) != SOLLAB_STATUS_OK || n != 4) return 3;
    if (sollab_partition_parts(q, buf, 8) != SOLLAB_STATUS_OK) return 4;
    for (size_t i = 0; i < n; i++) printf("%u ", buf[i]);
    printf("\n");
    sollab_partition_free(p);
    sollab_partition_free(q);

    const uint32_t bad[] = {1, 2};
    if (sollab_partition_new(bad, 2, &p) != SOLLAB_STATUS_OK) return 5;
    if (sollab_psi(p, &q, NULL) != SOLLAB_STATUS_NOT_MEMBER) return 6;
    if (strlen(sollab_last_error_message()) == 0) return 7;
    sollab_partition_free(p);

    char *json = NULL;
    if (sollab_verify_json("rr1", "series", 20, &json) != SOLLAB_STATUS_OK) return 8;
    printf("%s\n", json);
    sollab_string_free(json);
    return 0;
}
