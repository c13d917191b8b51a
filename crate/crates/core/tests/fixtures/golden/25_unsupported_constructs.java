public class Main {
    public static void main(String[] args) {
        int x = 3;                                       // v1 s1
        ;                                                // empty s2
        assert x > 0;                                    // contained as StatementOther s3
        synchronized (Main.class) {                      // contained as StatementOther s4
            for (int i = 0; i < x; i++) x--;             // (inside the opaque region)
        }
        System.out.println(x);                           // s5
    }
}
