#include <stdio.h>

typedef union {
  float f;
  unsigned int u;
} Bits;

int main(void) {
  Bits b;
  b.f = 1.5f;
  unsigned int exponent = (b.u >> 23) & 0xFF;
  printf("%u\n", exponent - 127);
  return 0;
}
