int main(void) {
  int *p = 0;
  struct { int a; } s;
  return s.b + *p;
}
