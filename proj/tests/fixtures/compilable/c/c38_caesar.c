#include <stdio.h>

static char shift(char c, int k) {
  if (c >= 'a' && c <= 'z') return (char)('a' + (c - 'a' + k) % 26);
  if (c >= 'A' && c <= 'Z') return (char)('A' + (c - 'A' + k) % 26);
  return c;
}

int main(void) {
  char msg[] = "Hello";
  int key = 3;
  for (int i = 0; msg[i] != '\0'; i++) msg[i] = shift(msg[i], key);
  puts(msg);
  return 0;
}
