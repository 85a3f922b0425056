// Batch driver for the vendored reference implementation.
// stdin:  one case per line: <nkeywords> <key words...> <4 plaintext words>, hex
// stdout: <16 subkeys> <4 ciphertext words> <4 decrypted words>, lowercase hex
#define main xcrush_reference_demo_main
#include "xcrush_ref.c"
#undef main

int main(void) {
    int nk;
    while (scanf("%d", &nk) == 1) {
        unsigned long long key[4] = {0, 0, 0, 0};
        unsigned long long data[4];
        unsigned long long subkeys[NUM_SUBKEYS];
        for (int i = 0; i < nk; i++) {
            if (scanf("%llx", &key[i]) != 1) return 2;
        }
        for (int i = 0; i < 4; i++) {
            if (scanf("%llx", &data[i]) != 1) return 2;
        }
        if (nk < KEY_LEN_128_BITS || nk > KEY_LEN_256_BITS) return 3;
        expand_key(key, nk, subkeys);
        for (int i = 0; i < NUM_SUBKEYS; i++) printf("%016llx ", subkeys[i]);
        _encrypt(data, 0, 4, subkeys);
        for (int i = 0; i < 4; i++) printf("%016llx ", data[i]);
        decrypt(data, 0, 4, subkeys);
        for (int i = 0; i < 4; i++) printf(i < 3 ? "%016llx " : "%016llx\n", data[i]);
    }
    return 0;
}
