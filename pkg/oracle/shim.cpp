// Shared-library wrapper exposing the reference primitives and PRNG to ctypes.
#define main xcrush_reference_demo_main
#include "xcrush_ref.c"
#undef main
extern "C" {
int o_compress(unsigned long long x) { return compress(x); }
unsigned long long o_avalanche(unsigned long long v, unsigned long long a) { return avalanche(v, a); }
unsigned long long o_unavalanche(unsigned long long v, unsigned long long a) { return unavalanche(v, a); }
void o_seed(unsigned long long s1, unsigned long long s2, unsigned long long s3, unsigned long long s4, unsigned long long s5) { S_1=s1; S_2=s2; S_3=s3; S_4=s4; S_5=s5; }
unsigned long long o_next(void) { return next(); }
void o_state(unsigned long long out[5]) { out[0]=S_1; out[1]=S_2; out[2]=S_3; out[3]=S_4; out[4]=S_5; }
}
