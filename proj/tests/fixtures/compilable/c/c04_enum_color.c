#include <stdio.h>

enum color { RED, GREEN, BLUE };

static const char *name(enum color c) {
  switch (c) {
    case RED:
      return "red";
    case GREEN:
      return "green";
    default:
      return "blue";
  }
}

int main(void) {
  enum color c = GREEN;
  int shift = (int)c + 1;
  printf("%s %d\n", name(c), shift % 3);
  return 0;
}
